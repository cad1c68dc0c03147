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

#include "chaingate/targets.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "chaingate/hamiltonians.hpp"
#include "chaingate/propagation.hpp"

namespace chaingate {
namespace {

constexpr double kUnitarityTol = 1e-12;

void check_register(int n_qubits, int min_qubits) {
  if (n_qubits < min_qubits || n_qubits > kMaxQubits) {
    throw ValidationError("gate register size out of range: " +
                          std::to_string(n_qubits));
  }
}

void check_pair(int a, int b, int n_qubits) {
  if (a < 1 || a > n_qubits || b < 1 || b > n_qubits) {
    throw ValidationError("gate qubit index out of range");
  }
  if (a == b) {
    throw ValidationError("gate qubit indices must be distinct");
  }
}

bool bit_of(unsigned index, int qubit, int n_qubits) {
  return (index >> (n_qubits - qubit)) & 1u;
}

unsigned flip_bit(unsigned index, int qubit, int n_qubits) {
  return index ^ (1u << (n_qubits - qubit));
}

// Classical reversible gate: column `in` maps to row `f(in)`.
template <typename F>
Matrix permutation_gate(int n_qubits, F f) {
  const unsigned dim = 1u << n_qubits;
  Matrix m = Matrix::Zero(dim, dim);
  for (unsigned in = 0; in < dim; ++in) m(f(in), in) = 1.0;
  return m;
}

unsigned swap_bits(unsigned index, int a, int b, int n_qubits) {
  if (bit_of(index, a, n_qubits) != bit_of(index, b, n_qubits)) {
    index = flip_bit(flip_bit(index, a, n_qubits), b, n_qubits);
  }
  return index;
}

}  // namespace

TargetGate TargetGate::toffoli(int n_qubits) {
  TargetGate g;
  g.kind = GateKind::kToffoli;
  g.n_qubits = n_qubits;
  return g;
}

TargetGate TargetGate::fredkin(int n_qubits) {
  TargetGate g;
  g.kind = GateKind::kFredkin;
  g.n_qubits = n_qubits;
  return g;
}

TargetGate TargetGate::cnot(int control, int target, int n_qubits) {
  TargetGate g;
  g.kind = GateKind::kCnot;
  g.n_qubits = n_qubits;
  g.qubit_a = control;
  g.qubit_b = target;
  return g;
}

TargetGate TargetGate::eswap(double theta, int qubit_a, int qubit_b,
                             int n_qubits) {
  TargetGate g;
  g.kind = GateKind::kESwap;
  g.n_qubits = n_qubits;
  g.qubit_a = qubit_a;
  g.qubit_b = qubit_b;
  g.theta = theta;
  return g;
}

TargetGate TargetGate::from_matrix(Matrix m) {
  TargetGate g;
  g.kind = GateKind::kCustom;
  const auto dim = m.rows();
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  g.n_qubits = n;
  g.custom = std::move(m);
  gate_matrix(g);  // validates shape and unitarity
  return g;
}

std::string TargetGate::label() const {
  std::ostringstream os;
  switch (kind) {
    case GateKind::kToffoli:
      os << "toffoli";
      break;
    case GateKind::kFredkin:
      os << "fredkin";
      break;
    case GateKind::kCnot:
      os << "cnot(" << qubit_a << "," << qubit_b << ")";
      break;
    case GateKind::kESwap:
      os << "eswap(theta=" << theta << ";" << qubit_a << "," << qubit_b
         << ")";
      break;
    case GateKind::kCustom:
      os << "custom";
      break;
  }
  os << "[N=" << n_qubits << "]";
  return os.str();
}

Matrix gate_matrix(const TargetGate& gate) {
  const int n = gate.n_qubits;
  switch (gate.kind) {
    case GateKind::kToffoli:
      check_register(n, 3);
      return permutation_gate(n, [n](unsigned in) {
        return bit_of(in, 1, n) && bit_of(in, 2, n) ? flip_bit(in, 3, n) : in;
      });
    case GateKind::kFredkin:
      check_register(n, 3);
      return permutation_gate(n, [n](unsigned in) {
        return bit_of(in, 1, n) ? swap_bits(in, 2, 3, n) : in;
      });
    case GateKind::kCnot: {
      check_register(n, 2);
      check_pair(gate.qubit_a, gate.qubit_b, n);
      const int c = gate.qubit_a;
      const int t = gate.qubit_b;
      return permutation_gate(n, [=](unsigned in) {
        return bit_of(in, c, n) ? flip_bit(in, t, n) : in;
      });
    }
    case GateKind::kESwap: {
      check_register(n, 2);
      check_pair(gate.qubit_a, gate.qubit_b, n);
      const int a = gate.qubit_a;
      const int b = gate.qubit_b;
      const Matrix swap = permutation_gate(
          n, [=](unsigned in) { return swap_bits(in, a, b, n); });
      const auto dim = swap.rows();
      return std::cos(gate.theta) * Matrix::Identity(dim, dim) +
             (kI * std::sin(gate.theta)) * swap;
    }
    case GateKind::kCustom: {
      const Matrix& m = gate.custom;
      if (m.rows() != m.cols() || m.rows() < 2 ||
          m.rows() != (Eigen::Index{1} << n)) {
        throw ValidationError("custom gate must be a 2^N x 2^N matrix");
      }
      if (!m.allFinite() || unitarity_deviation(m) > kUnitarityTol) {
        throw ValidationError("custom gate matrix is not unitary");
      }
      return m;
    }
  }
  throw ValidationError("unknown gate kind");
}

double palindrome_deviation(const ControlSequence& seq,
                            MirrorConvention convention) {
  const auto amps = seq.amplitudes();
  const std::size_t nf = amps.size();
  double worst = 0.0;
  if (convention == MirrorConvention::kFlattened) {
    for (std::size_t k = 0; k < nf; ++k) {
      worst = std::max(worst, std::abs(amps[k] - amps[nf - 1 - k]));
    }
  } else {
    const std::size_t half = nf / 2;
    for (std::size_t n = 0; n < half; ++n) {
      const std::size_t m = half - 1 - n;
      worst = std::max(worst, std::abs(amps[2 * n] - amps[2 * m]));
      worst = std::max(worst, std::abs(amps[2 * n + 1] - amps[2 * m + 1]));
    }
  }
  return worst;
}

bool is_palindromic(const ControlSequence& seq, double tol,
                    MirrorConvention convention) {
  return palindrome_deviation(seq, convention) <= tol;
}

}  // namespace chaingate
