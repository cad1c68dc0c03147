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

#include <string>
#include <vector>

#include "chaingate/hamiltonians.hpp"
#include "chaingate/types.hpp"

namespace chaingate {

struct DlaOptions {
  // Post-orthogonalization norm a commutator component needs for admission.
  double admission_tol = 1e-10;
};

struct DlaReport {
  int dim = 0;  // Hilbert-space dimension n
  std::vector<std::string> generator_labels;
  int dimension = 0;           // real dimension of the generated algebra
  int expected_dimension = 0;  // n^2 - 1
  int closure_sweeps = 0;
  double orthonormality_residual = 0.0;

  bool full_rank() const { return dimension == expected_dimension; }
};

// Real dimension of the Lie algebra generated by {i H_k}. Generators must be
// Hermitian and traceless. Basis is kept orthonormal under Re Tr(A^dagger B).
DlaReport dla_dimension(const std::vector<Matrix>& generators,
                        std::vector<std::string> labels = {},
                        const DlaOptions& options = {});

enum class ControlSet { kXY, kX, kY };

ControlSet parse_control_set(const std::string& name);

// Drift plus the requested control generators of `spec` (leakage included).
DlaReport chain_dla(const SpinChainSpec& spec, ControlSet controls,
                    const DlaOptions& options = {});

// DLA with leakage-weighted controls; throws ValidationError if the chain has
// no leakage set.
DlaReport verify_leakage_controllability(const SpinChainSpec& spec,
                                         const DlaOptions& options = {});

}  // namespace chaingate
