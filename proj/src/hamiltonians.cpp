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

#include "chaingate/hamiltonians.hpp"

#include <cmath>
#include <sstream>

namespace chaingate {

std::string Coupling::label() const {
  std::ostringstream os;
  switch (kind) {
    case CouplingKind::kXXX:
      os << "XXX";
      break;
    case CouplingKind::kXXZ:
      os << "XXZ(delta=" << jz << ")";
      break;
    case CouplingKind::kXYZ:
      os << "XYZ(" << jx << "," << jy << "," << jz << ")";
      break;
  }
  return os.str();
}

void SpinChainSpec::validate() const {
  if (n_qubits < kMinQubits || n_qubits > kMaxQubits) {
    throw ValidationError("n_qubits must lie in [2, 10], got " +
                          std::to_string(n_qubits));
  }
  if (actuator < 1 || actuator > n_qubits) {
    throw ValidationError("actuator index out of range: " +
                          std::to_string(actuator));
  }
  if (!std::isfinite(coupling.jx) || !std::isfinite(coupling.jy) ||
      !std::isfinite(coupling.jz)) {
    throw ValidationError("coupling constants must be finite");
  }
  if (!std::isfinite(global_field)) {
    throw ValidationError("global_field must be finite");
  }
  if (leakage && (std::isnan(*leakage) || *leakage < 0.0)) {
    throw ValidationError("leakage must be >= 0");
  }
}

Matrix pauli_string(const std::vector<Pauli>& ops) {
  const int n = static_cast<int>(ops.size());
  if (n < 1 || n > kMaxQubits) {
    throw ValidationError("pauli_string: register size out of range");
  }
  const Eigen::Index dim = Eigen::Index{1} << n;
  unsigned flip = 0;
  for (int q = 0; q < n; ++q) {
    if (ops[q] == Pauli::kX || ops[q] == Pauli::kY) {
      flip |= 1u << (n - 1 - q);
    }
  }
  Matrix m = Matrix::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    Complex amp{1.0, 0.0};
    for (int q = 0; q < n; ++q) {
      const bool bit = (static_cast<unsigned>(col) >> (n - 1 - q)) & 1u;
      switch (ops[q]) {
        case Pauli::kY:
          amp *= bit ? -kI : kI;
          break;
        case Pauli::kZ:
          if (bit) amp = -amp;
          break;
        default:
          break;
      }
    }
    m(static_cast<Eigen::Index>(static_cast<unsigned>(col) ^ flip), col) = amp;
  }
  return m;
}

Matrix pauli_on(int n_qubits, int qubit, Pauli p) {
  if (qubit < 1 || qubit > n_qubits) {
    throw ValidationError("pauli_on: qubit index out of range");
  }
  std::vector<Pauli> ops(n_qubits, Pauli::kI);
  ops[qubit - 1] = p;
  return pauli_string(ops);
}

Matrix build_drift(const SpinChainSpec& spec) {
  spec.validate();
  const int n = spec.n_qubits;
  Matrix h = Matrix::Zero(spec.dim(), spec.dim());
  const std::pair<Pauli, double> terms[] = {{Pauli::kX, spec.coupling.jx},
                                            {Pauli::kY, spec.coupling.jy},
                                            {Pauli::kZ, spec.coupling.jz}};
  for (int i = 1; i < n; ++i) {
    for (const auto& [p, j] : terms) {
      std::vector<Pauli> ops(n, Pauli::kI);
      ops[i - 1] = p;
      ops[i] = p;
      h += (j / 4.0) * pauli_string(ops);
    }
  }
  if (spec.global_field != 0.0) {
    for (int i = 1; i <= n; ++i) {
      h -= (spec.global_field / 2.0) * pauli_on(n, i, Pauli::kZ);
    }
  }
  return h;
}

double leakage_weight(const std::optional<double>& leakage, int qubit,
                      int actuator) {
  const int d = qubit - actuator;
  if (d == 0) return 1.0;
  if (!leakage || std::isinf(*leakage)) return 0.0;
  return std::exp(-*leakage * static_cast<double>(d) * d);
}

ControlGenerators build_control_generators(const SpinChainSpec& spec) {
  spec.validate();
  const int n = spec.n_qubits;
  ControlGenerators g{Matrix::Zero(spec.dim(), spec.dim()),
                      Matrix::Zero(spec.dim(), spec.dim())};
  for (int j = 1; j <= n; ++j) {
    const double w = leakage_weight(spec.leakage, j, spec.actuator);
    if (w == 0.0) continue;
    g.x += (0.5 * w) * pauli_on(n, j, Pauli::kX);
    g.y += (0.5 * w) * pauli_on(n, j, Pauli::kY);
  }
  return g;
}

}  // namespace chaingate
