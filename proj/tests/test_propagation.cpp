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

#include <cmath>
#include <numbers>
#include <random>

#include "chaingate/hamiltonians.hpp"
#include "chaingate/propagation.hpp"
#include "chaingate/targets.hpp"

using namespace chaingate;
using Catch::Matchers::WithinAbs;

namespace {

ControlSequence random_sequence(std::mt19937_64& rng, int n_pulses,
                                double slice, double box) {
  std::uniform_real_distribution<double> u(-box, box);
  std::vector<double> amps(n_pulses);
  for (double& a : amps) a = u(rng);
  return ControlSequence(std::move(amps), slice);
}

// Classical RK4 on dU/dt = -i H U for a piecewise-constant H, refined by step
// halving until successive propagators agree.
Matrix rk4_propagate(const ChainModel& model, const ControlSequence& seq) {
  auto integrate = [&](int steps_per_slice) {
    Matrix u = Matrix::Identity(model.dim(), model.dim());
    const double dt = seq.slice_duration() / steps_per_slice;
    const auto amps = seq.amplitudes();
    for (int k = 0; k < seq.n_pulses(); ++k) {
      const Matrix h = model.drift + amps[k] * model.control_for_slice(k);
      const Matrix a = -kI * h;
      for (int s = 0; s < steps_per_slice; ++s) {
        const Matrix k1 = a * u;
        const Matrix k2 = a * (u + 0.5 * dt * k1);
        const Matrix k3 = a * (u + 0.5 * dt * k2);
        const Matrix k4 = a * (u + dt * k3);
        u += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      }
    }
    return u;
  };
  int steps = 8;
  Matrix prev = integrate(steps);
  for (;;) {
    steps *= 2;
    Matrix next = integrate(steps);
    if (max_abs_difference(next, prev) < 1e-12 || steps > (1 << 16)) return next;
    prev = std::move(next);
  }
}

}  // namespace

TEST_CASE("control sequence validation") {
  CHECK_THROWS_AS(ControlSequence({1.0}, 0.5), ValidationError);
  CHECK_THROWS_AS(ControlSequence({1.0, 2.0, 3.0}, 0.5), ValidationError);
  CHECK_THROWS_AS(ControlSequence({1.0, 2.0}, 0.0), ValidationError);
  CHECK_THROWS_AS(ControlSequence({1.0, NAN}, 0.5), ValidationError);
  const ControlSequence s({1.0, -3.0, 2.0, 0.5}, 0.25);
  CHECK(s.hx(1) == 1.0);
  CHECK(s.hy(1) == -3.0);
  CHECK(s.hx(2) == 2.0);
  CHECK(s.total_time() == 1.0);
  CHECK(s.max_abs_amplitude() == 3.0);
  CHECK_THROWS_AS(s.check_box(2.5), ValidationError);
  CHECK_NOTHROW(s.check_box(3.0));
  const auto w = ControlSequence::with_total_time({1.0, 2.0, 3.0, 4.0}, 28.0);
  CHECK(w.slice_duration() == 7.0);
}

TEST_CASE("single-qubit rotation by pi about X is -iX") {
  const Matrix x = pauli_string({Pauli::kX});
  const Matrix u = expm_hermitian_generator(0.5 * x, std::numbers::pi);
  CHECK(max_abs_difference(u, -kI * x) < 1e-15);
}

TEST_CASE("non-Hermitian generators are rejected") {
  Matrix h = pauli_string({Pauli::kX});
  h(0, 1) += 1e-6;
  CHECK_THROWS_AS(expm_hermitian_generator(h, 1.0), ValidationError);
}

TEST_CASE("drift-only evolution matches the spectral formula") {
  SpinChainSpec spec;
  spec.n_qubits = 2;
  // Singlet (|01> - |10>)/sqrt2 has energy -3/4, triplet states +1/4.
  const ControlSequence zero = ControlSequence::zeros(2, 0.5);
  const Matrix u = propagate(spec, zero);
  Eigen::VectorXcd singlet(4);
  singlet << 0, 1, -1, 0;
  singlet /= std::sqrt(2.0);
  const Eigen::VectorXcd out = u * singlet;
  CHECK(std::abs(singlet.dot(out) - std::polar(1.0, 0.75)) < 1e-14);
  CHECK(std::abs(u(0, 0) - std::polar(1.0, -0.25)) < 1e-14);
}

TEST_CASE("propagator agrees with an independent RK4 integrator") {
  SpinChainSpec spec;
  const ChainModel model(spec);
  const ControlSequence seq({0.7, 0.7}, 0.5);
  CHECK(max_abs_difference(propagate(model, seq), rk4_propagate(model, seq)) <
        1e-9);

  SpinChainSpec leaky;
  leaky.coupling = Coupling::xyz(1.0, 0.9, 1.1);
  leaky.leakage = 2.5;
  leaky.global_field = 0.4;
  const ChainModel leaky_model(leaky);
  const ControlSequence seq2({1.3, -0.6, 2.2, 0.4, -1.7, 0.9}, 0.3);
  CHECK(max_abs_difference(propagate(leaky_model, seq2),
                           rk4_propagate(leaky_model, seq2)) < 1e-9);
}

TEST_CASE("propagator matches frozen reference values") {
  const ControlSequence seq({0.3, -1.2, 2.0, 0.7, -0.4, 1.5}, 0.8);
  SpinChainSpec spec;
  const Matrix u = propagate(spec, seq);
  CHECK_THAT(trace_fidelity(u, TargetGate::toffoli()),
             WithinAbs(0.3074756057371101, 1e-12));
  CHECK_THAT(trace_fidelity(u, TargetGate::fredkin()),
             WithinAbs(0.34323791026547534, 1e-12));
  CHECK(std::abs(u(0, 0) - Complex(0.03749943793513319, -0.5894125739522516)) <
        1e-12);
  CHECK(std::abs(u(5, 3) - Complex(-0.05744289476463215, 0.1747887636062699)) <
        1e-12);

  SpinChainSpec xxz;
  xxz.coupling = Coupling::xxz(0.5);
  xxz.leakage = 3.0;
  CHECK_THAT(trace_fidelity(propagate(xxz, seq), TargetGate::toffoli()),
             WithinAbs(0.20023341502099576, 1e-12));

  SpinChainSpec field;
  field.global_field = 0.5;
  CHECK_THAT(trace_fidelity(propagate(field, seq), TargetGate::toffoli()),
             WithinAbs(0.1102045005235901, 1e-12));
}

TEST_CASE("propagators are unitary", "[property]") {
  std::mt19937_64 rng(7);
  for (const int n : {2, 3, 4}) {
    SpinChainSpec spec;
    spec.n_qubits = n;
    spec.global_field = 0.6;
    const ChainModel model(spec);
    for (int trial = 0; trial < 10; ++trial) {
      const ControlSequence seq = random_sequence(rng, 40, 0.7, 20.0);
      CHECK(unitarity_deviation(propagate(model, seq)) <= 1e-10);
    }
  }
}

TEST_CASE("reversed sequence with negated time inverts the propagator",
          "[property]") {
  std::mt19937_64 rng(11);
  SpinChainSpec spec;
  const ChainModel model(spec);
  const ControlSequence seq = random_sequence(rng, 12, 0.4, 5.0);
  Matrix forward = propagate(model, seq);
  // Undo slice by slice: U^dagger = prod_k exp(+i H_k T) in forward order.
  Matrix back = Matrix::Identity(8, 8);
  const auto amps = seq.amplitudes();
  for (int k = 0; k < seq.n_pulses(); ++k) {
    const Matrix h = model.drift + amps[k] * model.control_for_slice(k);
    back = back * expm_hermitian_generator(h, -seq.slice_duration());
  }
  CHECK(max_abs_difference(back * forward, Matrix::Identity(8, 8)) < 1e-12);
  CHECK(max_abs_difference(back, forward.adjoint()) < 1e-12);
}

TEST_CASE("first slice uses the x control") {
  SpinChainSpec spec;
  spec.n_qubits = 2;
  spec.coupling = Coupling::xyz(0.0, 0.0, 0.0);
  const ChainModel model(spec);
  // With no coupling, a pi pulse on x followed by nothing on y is -iX on qubit 1.
  const ControlSequence seq({std::numbers::pi, 0.0}, 1.0);
  const Matrix expected = -kI * pauli_on(2, 1, Pauli::kX);
  CHECK(max_abs_difference(propagate(model, seq), expected) < 1e-14);
}

TEST_CASE("fidelity is invariant under a global phase of the propagator",
          "[property]") {
  std::mt19937_64 rng(3);
  SpinChainSpec spec;
  const Matrix u = propagate(spec, random_sequence(rng, 10, 0.9, 8.0));
  const Matrix g = gate_matrix(TargetGate::toffoli());
  const double f = trace_fidelity(u, g);
  for (double phi : {0.4, 2.0, -1.1}) {
    CHECK_THAT(trace_fidelity(std::polar(1.0, phi) * u, g), WithinAbs(f, 1e-14));
  }
  CHECK(f >= 0.0);
  CHECK(f <= 1.0 + 1e-15);
}
