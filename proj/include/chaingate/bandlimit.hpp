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

#include <utility>
#include <vector>

#include "chaingate/propagation.hpp"
#include "chaingate/types.hpp"

namespace chaingate {

// Sine integral Si(x) = int_0^x sin(t)/t dt. Power series for |x| <= 4,
// continued fraction for E1(ix) beyond.
double si(double x);

// x Si(x) + cos(x), an antiderivative of Si.
double si_antiderivative(double x);

// Ideal low-pass filtered version of an alternating PWC schedule: every
// rectangle [a, b) of height h becomes
//   (h / pi) [Si(w0 (b - t)) - Si(w0 (a - t))].
// Defined for all real t; the response rings outside [0, t_f].
class FilteredControl {
 public:
  FilteredControl(ControlSequence source, double cutoff);

  const ControlSequence& source() const { return source_; }
  double cutoff() const { return cutoff_; }

  // (h^f_x(t), h^f_y(t))
  std::pair<double, double> fields(double t) const;
  double hx(double t) const { return fields(t).first; }
  double hy(double t) const { return fields(t).second; }

  // Exact averages of both fields over [t0, t1], t1 > t0.
  std::pair<double, double> average_fields(double t0, double t1) const;

 private:
  template <typename Kernel>
  std::pair<double, double> combine(Kernel&& a) const;

  ControlSequence source_;
  double cutoff_;
};

// Throws ValidationError unless cutoff > 0.
FilteredControl filter_fields(const ControlSequence& seq, double cutoff);

enum class FieldSampling {
  kMidpoint,     // field sampled at each substep midpoint
  kCellAverage,  // exact substep average (first Magnus term)
};

// Product formula U <- exp(-i H delta_t) U over N_f * substeps steps of
// delta_t = T / substeps on [0, t_f], H = H_d + h^f_x C_x + h^f_y C_y.
Matrix propagate_filtered(const ChainModel& model,
                          const FilteredControl& filtered, int substeps,
                          FieldSampling sampling = FieldSampling::kCellAverage);

struct FilteredFidelity {
  Matrix propagator;
  double fidelity = 0.0;
  int substeps = 0;
  double last_change = 0.0;  // |F(K) - F(K/2)| at the returned K
  bool converged = false;
};

struct FilteredOptions {
  int initial_substeps = 64;
  int max_substeps = 1 << 17;
  double tolerance = 1e-8;
  FieldSampling sampling = FieldSampling::kCellAverage;
};

// Doubles the substep count from options.initial_substeps until the
// fidelity changes by less than options.tolerance.
FilteredFidelity filtered_fidelity(const ChainModel& model,
                                   const FilteredControl& filtered,
                                   const Matrix& gate,
                                   const FilteredOptions& options = {});

struct CutoffRow {
  double cutoff = 0.0;
  double fidelity = 0.0;
  int substeps = 0;
  bool converged = false;

  double gate_error() const { return 1.0 - fidelity; }
};

std::vector<CutoffRow> cutoff_scan(const ChainModel& model,
                                   const ControlSequence& seq,
                                   const Matrix& gate,
                                   const std::vector<double>& cutoffs,
                                   const FilteredOptions& options = {},
                                   unsigned threads = 0);

struct FieldSample {
  double t = 0.0;
  double hx = 0.0;
  double hy = 0.0;
};

// Evaluates the filtered fields on a uniform grid over [0, t_f] with
// `points_per_slice` points per slice plus the end point.
std::vector<FieldSample> sample_fields(const FilteredControl& filtered,
                                       int points_per_slice);

}  // namespace chaingate
