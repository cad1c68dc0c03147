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

#include "chaingate/bandlimit.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "chaingate/parallel.hpp"

namespace chaingate {
namespace {

constexpr double kSeriesLimit = 4.0;
constexpr int kMaxTerms = 200;

double si_series(double x) {
  // sum_k (-1)^k x^(2k+1) / ((2k+1) (2k+1)!)
  const double x2 = x * x;
  double term = x;  // (-1)^k x^(2k+1) / (2k+1)!
  double sum = x;
  for (int k = 1; k < kMaxTerms; ++k) {
    term *= -x2 / ((2.0 * k) * (2.0 * k + 1.0));
    const double add = term / (2.0 * k + 1.0);
    sum += add;
    if (std::abs(add) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

// Si(x) for x > 0 from the modified Lentz evaluation of E1(ix):
//   E1(ix) = -Ci(x) + i (Si(x) - pi/2).
double si_continued_fraction(double x) {
  constexpr double kTiny = 1e-300;
  constexpr double kEps = 1e-16;
  const Complex one{1.0, 0.0};
  Complex b{1.0, x};
  Complex c{1.0 / kTiny, 0.0};
  Complex d = one / b;
  Complex h = d;
  for (int i = 2; i < 100000; ++i) {
    const double a = -static_cast<double>(i - 1) * (i - 1);
    b += 2.0;
    d = one / (a * d + b);
    c = b + a / c;
    const Complex delta = c * d;
    h *= delta;
    if (std::abs(delta.real() - 1.0) + std::abs(delta.imag()) < kEps) break;
  }
  h *= Complex{std::cos(x), -std::sin(x)};
  return std::numbers::pi / 2.0 + h.imag();
}

}  // namespace

double si(double x) {
  if (std::isnan(x)) return x;
  const double ax = std::abs(x);
  double v;
  if (ax <= kSeriesLimit) {
    v = si_series(ax);
  } else if (std::isinf(ax)) {
    v = std::numbers::pi / 2.0;
  } else {
    v = si_continued_fraction(ax);
  }
  return x < 0.0 ? -v : v;
}

double si_antiderivative(double x) { return x * si(x) + std::cos(x); }

namespace {

// First derivative of sin(x)/x.
double sinc_d1(double x) {
  if (std::abs(x) < 0.5) {
    double term = 1.0;
    double sum = 0.0;
    for (int k = 1; k < 12; ++k) {
      term *= -x * x / ((2.0 * k) * (2.0 * k + 1.0));
      sum += 2.0 * k * term;
    }
    return x == 0.0 ? 0.0 : sum / x;
  }
  return (x * std::cos(x) - std::sin(x)) / (x * x);
}

// Third derivative of sin(x)/x.
double sinc_d3(double x) {
  if (std::abs(x) < 1.0) {
    double term = 1.0;
    double sum = 0.0;
    for (int k = 1; k < 14; ++k) {
      term *= -x * x / ((2.0 * k) * (2.0 * k + 1.0));
      if (k >= 2) sum += (2.0 * k) * (2.0 * k - 1.0) * (2.0 * k - 2.0) * term;
    }
    return x == 0.0 ? 0.0 : sum / (x * x * x);
  }
  const double s = std::sin(x);
  const double c = std::cos(x);
  const double x2 = x * x;
  return -c / x + 3.0 * s / x2 + 6.0 * c / (x2 * x) - 6.0 * s / (x2 * x2);
}

// Mean of Si over [lo, hi]. Narrow cells use a midpoint expansion since the
// antiderivative difference loses all precision there.
double si_mean(double lo, double hi) {
  constexpr double kNarrow = 0.05;
  const double w = hi - lo;
  if (w > kNarrow) return (si_antiderivative(hi) - si_antiderivative(lo)) / w;
  const double mid = 0.5 * (lo + hi);
  const double w2 = w * w;
  return si(mid) + w2 / 24.0 * sinc_d1(mid) + w2 * w2 / 1920.0 * sinc_d3(mid);
}

}  // namespace

FilteredControl::FilteredControl(ControlSequence source, double cutoff)
    : source_(std::move(source)), cutoff_(cutoff) {
  if (!(cutoff_ > 0.0) || std::isnan(cutoff_)) {
    throw ValidationError("cutoff frequency must be positive");
  }
}

// `a(m)` supplies the kernel at boundary m = 0..N_f; slice k spans
// boundaries k and k+1, so h_{x,n} uses a_{2n-1} - a_{2n-2} and h_{y,n} uses
// a_{2n} - a_{2n-1}.
template <typename Kernel>
std::pair<double, double> FilteredControl::combine(Kernel&& a) const {
  const auto amps = source_.amplitudes();
  const int nf = source_.n_pulses();
  double hx = 0.0;
  double hy = 0.0;
  double left = a(0);
  for (int k = 0; k < nf; ++k) {
    const double right = a(k + 1);
    const double contribution = amps[k] * (right - left);
    if (k % 2 == 0) {
      hx += contribution;
    } else {
      hy += contribution;
    }
    left = right;
  }
  return {hx / std::numbers::pi, hy / std::numbers::pi};
}

std::pair<double, double> FilteredControl::fields(double t) const {
  const double slice = source_.slice_duration();
  return combine([&](int m) { return si(cutoff_ * (m * slice - t)); });
}

std::pair<double, double> FilteredControl::average_fields(double t0,
                                                          double t1) const {
  if (!(t1 > t0)) throw ValidationError("average_fields needs t1 > t0");
  const double slice = source_.slice_duration();
  return combine([&](int m) {
    return si_mean(cutoff_ * (m * slice - t1), cutoff_ * (m * slice - t0));
  });
}

FilteredControl filter_fields(const ControlSequence& seq, double cutoff) {
  return FilteredControl(seq, cutoff);
}

Matrix propagate_filtered(const ChainModel& model,
                          const FilteredControl& filtered, int substeps,
                          FieldSampling sampling) {
  if (substeps < 1) throw ValidationError("substeps must be >= 1");
  const ControlSequence& seq = filtered.source();
  const double dt = seq.slice_duration() / substeps;
  const long steps = static_cast<long>(seq.n_pulses()) * substeps;
  Matrix u = Matrix::Identity(model.dim(), model.dim());
  Matrix h(model.dim(), model.dim());
  for (long s = 0; s < steps; ++s) {
    const double t0 = s * dt;
    const auto [hx, hy] = sampling == FieldSampling::kMidpoint
                              ? filtered.fields(t0 + 0.5 * dt)
                              : filtered.average_fields(t0, t0 + dt);
    h = model.drift + hx * model.controls.x + hy * model.controls.y;
    u = spectral_exponential(h, dt).propagator * u;
  }
  return u;
}

FilteredFidelity filtered_fidelity(const ChainModel& model,
                                   const FilteredControl& filtered,
                                   const Matrix& gate,
                                   const FilteredOptions& options) {
  if (options.initial_substeps < 1 ||
      options.max_substeps < options.initial_substeps) {
    throw ValidationError("invalid substep bounds");
  }
  FilteredFidelity out;
  int k = options.initial_substeps;
  out.propagator = propagate_filtered(model, filtered, k, options.sampling);
  out.fidelity = trace_fidelity(out.propagator, gate);
  out.substeps = k;
  out.last_change = std::numeric_limits<double>::infinity();
  while (2 * k <= options.max_substeps) {
    k *= 2;
    Matrix u = propagate_filtered(model, filtered, k, options.sampling);
    const double f = trace_fidelity(u, gate);
    out.last_change = std::abs(f - out.fidelity);
    out.propagator = std::move(u);
    out.fidelity = f;
    out.substeps = k;
    if (out.last_change < options.tolerance) {
      out.converged = true;
      break;
    }
  }
  return out;
}

std::vector<CutoffRow> cutoff_scan(const ChainModel& model,
                                   const ControlSequence& seq,
                                   const Matrix& gate,
                                   const std::vector<double>& cutoffs,
                                   const FilteredOptions& options,
                                   unsigned threads) {
  std::vector<CutoffRow> rows(cutoffs.size());
  parallel_for(cutoffs.size(), threads, [&](std::size_t i) {
    const FilteredFidelity r =
        filtered_fidelity(model, FilteredControl(seq, cutoffs[i]), gate, options);
    rows[i] = {cutoffs[i], r.fidelity, r.substeps, r.converged};
  });
  return rows;
}

std::vector<FieldSample> sample_fields(const FilteredControl& filtered,
                                       int points_per_slice) {
  if (points_per_slice < 1) {
    throw ValidationError("points_per_slice must be >= 1");
  }
  const ControlSequence& seq = filtered.source();
  const long n = static_cast<long>(seq.n_pulses()) * points_per_slice;
  const double dt = seq.slice_duration() / points_per_slice;
  std::vector<FieldSample> out;
  out.reserve(n + 1);
  for (long i = 0; i <= n; ++i) {
    const double t = i * dt;
    const auto [hx, hy] = filtered.fields(t);
    out.push_back({t, hx, hy});
  }
  return out;
}

}  // namespace chaingate
