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


#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "chaingate/hamiltonians.hpp"

using namespace chaingate;
using Catch::Matchers::WithinAbs;

namespace {

std::vector<double> sorted_eigenvalues(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  std::vector<double> v(es.eigenvalues().data(),
                        es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("single-qubit Paulis on a one-site register") {
  const Matrix x = pauli_string({Pauli::kX});
  const Matrix y = pauli_string({Pauli::kY});
  const Matrix z = pauli_string({Pauli::kZ});
  CHECK(x(0, 1) == Complex(1, 0));
  CHECK(y(0, 1) == Complex(0, -1));
  CHECK(y(1, 0) == Complex(0, 1));
  CHECK(z(1, 1) == Complex(-1, 0));
  // XY = iZ
  CHECK(max_abs_difference(x * y, kI * z) == 0.0);
}

TEST_CASE("qubit 1 is the most significant bit") {
  const Matrix x1 = pauli_on(3, 1, Pauli::kX);
  // X on qubit 1 maps |000> (index 0) to |100> (index 4).
  CHECK(x1(4, 0) == Complex(1, 0));
  const Matrix z3 = pauli_on(3, 3, Pauli::kZ);
  CHECK(z3(1, 1) == Complex(-1, 0));
  CHECK(z3(4, 4) == Complex(1, 0));
}

TEST_CASE("two-qubit XXX drift has the singlet-triplet spectrum") {
  SpinChainSpec spec;
  spec.n_qubits = 2;
  const auto ev = sorted_eigenvalues(build_drift(spec));
  REQUIRE(ev.size() == 4);
  CHECK_THAT(ev[0], WithinAbs(-0.75, 1e-14));
  for (int i = 1; i < 4; ++i) CHECK_THAT(ev[i], WithinAbs(0.25, 1e-14));
}

TEST_CASE("three-qubit XXX drift with global field matches reference spectrum") {
  SpinChainSpec spec;
  spec.global_field = 0.5;
  const auto ev = sorted_eigenvalues(build_drift(spec));
  const double expected[] = {-1.25, -0.75, -0.25, -0.25, 0.25, 0.25, 0.75, 1.25};
  for (int i = 0; i < 8; ++i) CHECK_THAT(ev[i], WithinAbs(expected[i], 1e-13));
}

TEST_CASE("drift and controls are Hermitian and traceless") {
  for (const Coupling c :
       {Coupling::xxx(), Coupling::xxz(0.5), Coupling::xyz(1.0, 0.9, 1.1)}) {
    SpinChainSpec spec;
    spec.coupling = c;
    spec.global_field = 0.3;
    spec.leakage = 3.0;
    const Matrix h = build_drift(spec);
    const ControlGenerators g = build_control_generators(spec);
    for (const Matrix* m : {&h, &g.x, &g.y}) {
      CHECK(hermiticity_deviation(*m) == 0.0);
      CHECK(std::abs(m->trace()) < 1e-14);
    }
  }
}

TEST_CASE("XXZ with unit anisotropy reproduces the XXX drift exactly") {
  SpinChainSpec a;
  SpinChainSpec b;
  b.coupling = Coupling::xxz(1.0);
  CHECK(max_abs_difference(build_drift(a), build_drift(b)) == 0.0);
  SpinChainSpec c;
  c.coupling = Coupling::xyz(1.0, 1.0, 1.0);
  CHECK(max_abs_difference(build_drift(a), build_drift(c)) == 0.0);
}

TEST_CASE("drift commutes with total magnetization for XXZ") {
  SpinChainSpec spec;
  spec.n_qubits = 4;
  spec.coupling = Coupling::xxz(0.3);
  spec.global_field = 0.7;
  const Matrix h = build_drift(spec);
  Matrix mz = Matrix::Zero(16, 16);
  for (int q = 1; q <= 4; ++q) mz += pauli_on(4, q, Pauli::kZ);
  CHECK((h * mz - mz * h).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("leakage weights") {
  CHECK(leakage_weight(std::nullopt, 1) == 1.0);
  CHECK(leakage_weight(std::nullopt, 2) == 0.0);
  CHECK(leakage_weight(std::nullopt, 3) == 0.0);
  CHECK(leakage_weight(5.0, 1) == 1.0);
  CHECK_THAT(leakage_weight(5.0, 2), WithinAbs(6.737946999085467e-3, 1e-15));
  CHECK_THAT(leakage_weight(1.0, 3), WithinAbs(1.8315638888734179e-2, 1e-15));
  CHECK_THAT(leakage_weight(3.0, 3), WithinAbs(std::exp(-12.0), 1e-18));
  // mu = 0 drives every qubit with unit weight.
  CHECK(leakage_weight(0.0, 3) == 1.0);
}

TEST_CASE("controls without leakage act on the actuator only") {
  SpinChainSpec spec;
  const ControlGenerators g = build_control_generators(spec);
  CHECK(max_abs_difference(g.x, 0.5 * pauli_on(3, 1, Pauli::kX)) == 0.0);
  CHECK(max_abs_difference(g.y, 0.5 * pauli_on(3, 1, Pauli::kY)) == 0.0);
}

TEST_CASE("leakage-weighted controls") {
  SpinChainSpec spec;
  spec.leakage = 2.0;
  const ControlGenerators g = build_control_generators(spec);
  Matrix expected = 0.5 * pauli_on(3, 1, Pauli::kX) +
                    0.5 * std::exp(-2.0) * pauli_on(3, 2, Pauli::kX) +
                    0.5 * std::exp(-8.0) * pauli_on(3, 3, Pauli::kX);
  CHECK(max_abs_difference(g.x, expected) < 1e-16);
}

TEST_CASE("chain spec validation") {
  SpinChainSpec spec;
  spec.n_qubits = 1;
  CHECK_THROWS_AS(spec.validate(), ValidationError);
  spec.n_qubits = 3;
  spec.actuator = 4;
  CHECK_THROWS_AS(spec.validate(), ValidationError);
  spec.actuator = 1;
  spec.leakage = -1.0;
  CHECK_THROWS_AS(spec.validate(), ValidationError);
  spec.leakage.reset();
  spec.global_field = std::nan("");
  CHECK_THROWS_AS(spec.validate(), ValidationError);
  CHECK_THROWS_AS(pauli_on(3, 0, Pauli::kX), ValidationError);
}
