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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chaingate/types.hpp"

namespace chaingate {

inline constexpr int kMinQubits = 2;
inline constexpr int kMaxQubits = 10;

enum class CouplingKind { kXXX, kXXZ, kXYZ };

// Nearest-neighbour exchange constants in units of J. XXX and XXZ are stored
// as their XYZ equivalents, so all three builders share one code path.
struct Coupling {
  CouplingKind kind = CouplingKind::kXXX;
  double jx = 1.0;
  double jy = 1.0;
  double jz = 1.0;

  static Coupling xxx() { return {}; }
  static Coupling xxz(double delta) {
    return {CouplingKind::kXXZ, 1.0, 1.0, delta};
  }
  static Coupling xyz(double jx, double jy, double jz) {
    return {CouplingKind::kXYZ, jx, jy, jz};
  }

  std::string label() const;
};

struct SpinChainSpec {
  int n_qubits = 3;
  Coupling coupling{};
  // Static global field along z, in units of J. Zero means absent.
  double global_field = 0.0;
  // Control-field leakage rate. Empty means perfectly local control.
  std::optional<double> leakage{};
  // 1-based index of the qubit driven by the control fields.
  int actuator = 1;

  int dim() const { return 1 << n_qubits; }

  // Throws ValidationError naming the offending field.
  void validate() const;
};

enum class Pauli { kI, kX, kY, kZ };

// Pauli operator acting on a single (1-based) qubit of an n-qubit register.
Matrix pauli_on(int n_qubits, int qubit, Pauli p);

// Tensor product of single-qubit Paulis; `ops[q-1]` acts on qubit q.
Matrix pauli_string(const std::vector<Pauli>& ops);

// H_d = sum_i (Jx/4 X_i X_{i+1} + Jy/4 Y_i Y_{i+1} + Jz/4 Z_i Z_{i+1})
//       - (Omega/2) sum_i Z_i
// on an open chain.
Matrix build_drift(const SpinChainSpec& spec);

// Amplitude of the control field seen by `qubit`. Equal to 1 on the actuator;
// exp(-mu (j - a)^2) with leakage, otherwise 0 away from the actuator.
double leakage_weight(const std::optional<double>& leakage, int qubit,
                      int actuator = 1);

struct ControlGenerators {
  Matrix x;  // multiplies h_x(t)
  Matrix y;  // multiplies h_y(t)
};

ControlGenerators build_control_generators(const SpinChainSpec& spec);

}  // namespace chaingate
