// Copyright 2026 The chaingate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace chaingate {

using Complex = std::complex<double>;

// Dense operator on the 2^N-dimensional chain Hilbert space. Qubit 1 is the
// most significant bit of the basis index.
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

// Invalid input: out-of-range parameters, inconsistent dimensions, malformed
// configuration. Maps to exit code 1 in the CLI.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical computation could not produce a meaningful answer.
// Maps to exit code 2 in the CLI.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Largest entrywise modulus of A - A^dagger.
double hermiticity_deviation(const Matrix& a);

// Largest entrywise modulus of U^dagger U - I.
double unitarity_deviation(const Matrix& u);

// Largest entrywise modulus of A - B; dimensions must agree.
double max_abs_difference(const Matrix& a, const Matrix& b);

}  // namespace chaingate
