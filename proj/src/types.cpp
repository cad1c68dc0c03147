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

#include "chaingate/types.hpp"

namespace chaingate {

double hermiticity_deviation(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw ValidationError("hermiticity check requires a square matrix");
  }
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

double unitarity_deviation(const Matrix& u) {
  if (u.rows() != u.cols()) {
    throw ValidationError("unitarity check requires a square matrix");
  }
  const Matrix id = Matrix::Identity(u.rows(), u.cols());
  return (u.adjoint() * u - id).cwiseAbs().maxCoeff();
}

double max_abs_difference(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ValidationError("matrix dimensions differ");
  }
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace chaingate
