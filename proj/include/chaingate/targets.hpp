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

#include "chaingate/types.hpp"

namespace chaingate {

class ControlSequence;

enum class GateKind { kToffoli, kFredkin, kCnot, kESwap, kCustom };

// Goal unitary embedded in an n-qubit chain. Qubit indices are 1-based.
struct TargetGate {
  GateKind kind = GateKind::kToffoli;
  int n_qubits = 3;
  // CNOT: control/target. eSWAP: the acting pair. Toffoli and Fredkin use the
  // fixed assignment (controls 1,2 -> target 3; control 1 -> swap 2,3).
  int qubit_a = 1;
  int qubit_b = 2;
  double theta = 0.0;  // eSWAP angle, radians
  Matrix custom{};

  static TargetGate toffoli(int n_qubits = 3);
  static TargetGate fredkin(int n_qubits = 3);
  static TargetGate cnot(int control, int target, int n_qubits = 3);
  static TargetGate eswap(double theta, int qubit_a = 1, int qubit_b = 2,
                          int n_qubits = 2);
  static TargetGate from_matrix(Matrix m);

  std::string label() const;
};

// Throws ValidationError on index collisions, out-of-range qubits, or a
// non-unitary custom matrix.
Matrix gate_matrix(const TargetGate& gate);

enum class MirrorConvention {
  // slice k <-> slice N_f + 1 - k over the interleaved x,y,x,y,... list
  kFlattened,
  // h_x[n] <-> h_x[N_f/2 + 1 - n] and h_y[n] <-> h_y[N_f/2 + 1 - n]
  kPerAxis,
};

bool is_palindromic(const ControlSequence& seq, double tol,
                    MirrorConvention convention = MirrorConvention::kFlattened);

// Largest mirror mismatch under the given convention.
double palindrome_deviation(const ControlSequence& seq,
                            MirrorConvention convention);

}  // namespace chaingate
