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
#include <functional>
#include <numbers>
#include <random>

#include "chaingate/bandlimit.hpp"
#include "chaingate/targets.hpp"

using namespace chaingate;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  const auto simpson = [&](double l, double r, double fl, double fm, double fr) {
    return (r - l) / 6.0 * (fl + 4.0 * fm + fr);
  };
  std::function<double(double, double, double, double, double, double, int)>
      rec = [&](double l, double r, double fl, double fm, double fr,
                double whole, int depth) {
        const double m = 0.5 * (l + r);
        const double lm = 0.5 * (l + m);
        const double rm = 0.5 * (m + r);
        const double flm = f(lm);
        const double frm = f(rm);
        const double left = simpson(l, m, fl, flm, fm);
        const double right = simpson(m, r, fm, frm, fr);
        if (depth > 40 || std::abs(left + right - whole) < 15.0 * tol) {
          return left + right + (left + right - whole) / 15.0;
        }
        return rec(l, m, fl, flm, fm, left, depth + 1) +
               rec(m, r, fm, frm, fr, right, depth + 1);
      };
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  return rec(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), 0);
}

double sinc(double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; }

ControlSequence random_sequence(std::mt19937_64& rng, int n_pulses,
                                double slice, double box) {
  std::uniform_real_distribution<double> u(-box, box);
  std::vector<double> amps(n_pulses);
  for (double& a : amps) a = u(rng);
  return ControlSequence(std::move(amps), slice);
}

}  // namespace

TEST_CASE("sine integral at pi against quadrature and reference") {
  const double quad = adaptive_simpson(sinc, 0.0, std::numbers::pi, 1e-15);
  CHECK_THAT(si(std::numbers::pi), WithinAbs(quad, 1e-13));
  CHECK_THAT(si(std::numbers::pi), WithinAbs(1.851937051982466, 1e-14));
}

TEST_CASE("sine integral reference values across both evaluation branches") {
  CHECK(si(0.0) == 0.0);
  CHECK_THAT(si(1.0), WithinAbs(0.94608307036718301494, 1e-15));
  CHECK_THAT(si(4.0), WithinAbs(1.7582031389490530581, 1e-15));
  CHECK_THAT(si(4.0001), WithinAbs(1.7581842183061578669, 1e-15));
  CHECK_THAT(si(10.0), WithinAbs(1.6583475942188740493, 1e-15));
  CHECK_THAT(si(50.0), WithinAbs(1.5516170724859358947, 1e-15));
  CHECK_THAT(si(1000.0), WithinAbs(1.5702331219687712181, 1e-15));
  CHECK_THAT(si(1e9), WithinAbs(std::numbers::pi / 2, 1e-8));
}

TEST_CASE("sine integral is odd", "[property]") {
  for (double x : {0.3, 2.0, 3.999, 4.5, 17.0, 300.0}) {
    CHECK(si(-x) == -si(x));
  }
}

TEST_CASE("antiderivative differentiates back to the sine integral") {
  for (double x : {-7.0, -0.5, 0.8, 3.9, 4.2, 25.0}) {
    const double h = 1e-5;
    const double d =
        (si_antiderivative(x + h) - si_antiderivative(x - h)) / (2 * h);
    CHECK_THAT(d, WithinAbs(si(x), 1e-9));
  }
}

TEST_CASE("filtered fields match a frequency-domain reference") {
  // Reference: (1/pi) * integral over |omega| < omega0 of the spectrum of the
  // piecewise-constant fields, evaluated by adaptive quadrature.
  const ControlSequence seq({1.0, -0.5, 0.8, 0.3}, 1.0);
  const FilteredControl f(seq, 16.0);
  struct Ref {
    double t, hx, hy;
  };
  const Ref refs[] = {
      {0.3, 0.9945727018597397, -0.0013044188594385799},
      {1.0, 0.49708986730563876, -0.25578986073952237},
      {1.7, 0.007581573692250127, -0.5044492695845955},
      {2.5, 0.811991121588629, 0.0012381064083403816},
      {3.9, -0.017202789067394343, 0.27880573720500085},
  };
  for (const Ref& r : refs) {
    const auto [hx, hy] = f.fields(r.t);
    CHECK_THAT(hx, WithinAbs(r.hx, 1e-6));
    CHECK_THAT(hy, WithinAbs(r.hy, 1e-6));
  }
}

TEST_CASE("filtered fields agree with time-domain sinc convolution") {
  const ControlSequence seq({2.0, 0.0, -1.0, 0.0}, 0.5);
  const double w0 = 6.0;
  const FilteredControl f(seq, w0);
  for (double t : {0.1, 0.75, 1.6}) {
    auto kernel = [&](double s) {
      return w0 / std::numbers::pi * sinc(w0 * (t - s));
    };
    const double ref = 2.0 * adaptive_simpson(kernel, 0.0, 0.5, 1e-14) -
                       1.0 * adaptive_simpson(kernel, 1.0, 1.5, 1e-14);
    CHECK_THAT(f.hx(t), WithinAbs(ref, 1e-11));
    CHECK(f.hy(t) == 0.0);
  }
}

TEST_CASE("filtering is linear in the amplitudes", "[property]") {
  std::mt19937_64 rng(12);
  const ControlSequence a = random_sequence(rng, 8, 0.4, 5.0);
  const ControlSequence b = random_sequence(rng, 8, 0.4, 5.0);
  std::vector<double> mix(8);
  for (int k = 0; k < 8; ++k) {
    mix[k] = 2.0 * a.amplitudes()[k] - 0.5 * b.amplitudes()[k];
  }
  const FilteredControl fa(a, 9.0);
  const FilteredControl fb(b, 9.0);
  const FilteredControl fm(ControlSequence(mix, 0.4), 9.0);
  for (double t : {0.0, 0.33, 1.2, 3.1}) {
    CHECK_THAT(fm.hx(t), WithinAbs(2.0 * fa.hx(t) - 0.5 * fb.hx(t), 1e-12));
    CHECK_THAT(fm.hy(t), WithinAbs(2.0 * fa.hy(t) - 0.5 * fb.hy(t), 1e-12));
  }
}

TEST_CASE("wide-band filter recovers the piecewise-constant fields") {
  const ControlSequence seq({3.0, -2.0, 1.5, 4.0}, 0.4);
  const FilteredControl f(seq, 1e4);
  CHECK_THAT(f.hx(0.2), WithinAbs(3.0, 1e-3));
  CHECK_THAT(f.hy(0.6), WithinAbs(-2.0, 1e-3));
  CHECK_THAT(f.hx(1.0), WithinAbs(1.5, 1e-3));
  CHECK_THAT(f.hx(0.6), WithinAbs(0.0, 1e-3));
}

TEST_CASE("cell averages match quadrature of the filtered field") {
  const ControlSequence seq({1.0, -0.5, 0.8, 0.3}, 1.0);
  const FilteredControl f(seq, 7.0);
  const double t0 = 0.9;
  const double t1 = 1.35;
  const auto [ax, ay] = f.average_fields(t0, t1);
  const double qx =
      adaptive_simpson([&](double t) { return f.hx(t); }, t0, t1, 1e-14);
  const double qy =
      adaptive_simpson([&](double t) { return f.hy(t); }, t0, t1, 1e-14);
  CHECK_THAT(ax, WithinAbs(qx / (t1 - t0), 1e-11));
  CHECK_THAT(ay, WithinAbs(qy / (t1 - t0), 1e-11));
}

TEST_CASE("narrow cell averages stay accurate far from the origin") {
  const ControlSequence seq({20.0, -18.0, 15.0, -19.5}, 5.0);
  const FilteredControl f(seq, 10.0);
  for (const double t0 : {0.05, 4.3, 11.7, 19.2}) {
    for (const double width : {1e-2, 1e-4, 1e-7}) {
      const double t1 = t0 + width;
      const auto [ax, ay] = f.average_fields(t0, t1);
      const double qx =
          adaptive_simpson([&](double t) { return f.hx(t); }, t0, t1, 1e-18);
      const double qy =
          adaptive_simpson([&](double t) { return f.hy(t); }, t0, t1, 1e-18);
      INFO("t0 " << t0 << " width " << width);
      CHECK_THAT(ax, WithinAbs(qx / (t1 - t0), 1e-11));
      CHECK_THAT(ay, WithinAbs(qy / (t1 - t0), 1e-11));
    }
  }
}

TEST_CASE("filtered propagation converges at second order", "[property]") {
  std::mt19937_64 rng(21);
  SpinChainSpec spec;
  const ChainModel model(spec);
  const ControlSequence seq = random_sequence(rng, 10, 0.5, 8.0);
  const FilteredControl f(seq, 12.0);
  for (const FieldSampling mode :
       {FieldSampling::kMidpoint, FieldSampling::kCellAverage}) {
    const Matrix ref = propagate_filtered(model, f, 2048, mode);
    const double e1 = max_abs_difference(propagate_filtered(model, f, 8, mode), ref);
    const double e2 = max_abs_difference(propagate_filtered(model, f, 16, mode), ref);
    const double e3 = max_abs_difference(propagate_filtered(model, f, 32, mode), ref);
    const double p1 = std::log2(e1 / e2);
    const double p2 = std::log2(e2 / e3);
    INFO("mode " << static_cast<int>(mode) << " exponents " << p1 << ", " << p2);
    CHECK(p2 >= 1.8);
    CHECK(p2 <= 2.2);
  }
}

TEST_CASE("substep doubling converges and stays unitary") {
  std::mt19937_64 rng(8);
  SpinChainSpec spec;
  const ChainModel model(spec);
  const ControlSequence seq = random_sequence(rng, 20, 0.6, 10.0);
  const FilteredFidelity r =
      filtered_fidelity(model, FilteredControl(seq, 15.0),
                        gate_matrix(TargetGate::toffoli()), {});
  CHECK(r.converged);
  CHECK(r.last_change < 1e-8);
  CHECK(r.substeps >= 128);
  CHECK(unitarity_deviation(r.propagator) < 1e-10);
}

TEST_CASE("very high cutoff reproduces the piecewise-constant fidelity") {
  std::mt19937_64 rng(44);
  SpinChainSpec spec;
  const ChainModel model(spec);
  const Matrix g = gate_matrix(TargetGate::fredkin());
  const ControlSequence seq = random_sequence(rng, 16, 0.8, 10.0);
  const double pwc = trace_fidelity(propagate(model, seq), g);
  const FilteredFidelity r =
      filtered_fidelity(model, FilteredControl(seq, 1e4), g, {});
  CHECK(std::abs(r.fidelity - pwc) < 1e-4);
}

TEST_CASE("cutoff scan rows follow the input order") {
  std::mt19937_64 rng(2);
  SpinChainSpec spec;
  spec.n_qubits = 2;
  const ChainModel model(spec);
  const ControlSequence seq = random_sequence(rng, 8, 0.5, 5.0);
  const Matrix g = gate_matrix(TargetGate::eswap(0.4));
  const std::vector<double> cutoffs = {30.0, 5.0, 12.0};
  const auto rows = cutoff_scan(model, seq, g, cutoffs, {}, 3);
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(rows[i].cutoff == cutoffs[i]);
    const auto single =
        filtered_fidelity(model, FilteredControl(seq, cutoffs[i]), g, {});
    CHECK(rows[i].fidelity == single.fidelity);
    CHECK_THAT(rows[i].gate_error(), WithinAbs(1.0 - rows[i].fidelity, 0.0));
  }
}

TEST_CASE("field sampling grid and validation") {
  const ControlSequence seq({1.0, 2.0, 3.0, 4.0}, 0.5);
  const FilteredControl f(seq, 10.0);
  const auto samples = sample_fields(f, 5);
  REQUIRE(samples.size() == 21);
  CHECK(samples.front().t == 0.0);
  CHECK_THAT(samples.back().t, WithinAbs(2.0, 1e-15));
  CHECK_THROWS_AS(sample_fields(f, 0), ValidationError);
  CHECK_THROWS_AS(FilteredControl(seq, 0.0), ValidationError);
  CHECK_THROWS_AS(FilteredControl(seq, -3.0), ValidationError);
  CHECK_THROWS_AS(f.average_fields(1.0, 1.0), ValidationError);
}
