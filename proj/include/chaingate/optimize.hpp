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

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "chaingate/propagation.hpp"
#include "chaingate/targets.hpp"
#include "chaingate/types.hpp"

namespace chaingate {

enum class GradientMode { kAnalytic, kFiniteDifference };

struct OptimizerConfig {
  int n_starts = 1000;          // random sample size
  int n_select = 20;            // best samples refined by local search
  double amplitude_box = 20.0;  // |h| <= A_max, units of J
  // Half-width of the uniform start-point distribution; defaults to
  // amplitude_box.
  std::optional<double> sample_box{};
  GradientMode gradient_mode = GradientMode::kAnalytic;
  double fd_step = 1e-6;
  double convergence_tol = 1e-12;  // on the per-iteration fidelity change
  double gradient_tol = 1e-10;     // on the infinity norm of dF/dh
  int max_iters = 5000;
  std::uint64_t rng_seed = 42;
  // Stop refining further samples once a local search reaches this fidelity.
  // Only searches up to the first qualifying one (in sample order) count.
  std::optional<double> stop_fidelity{};
  unsigned threads = 0;  // 0 = hardware concurrency

  double start_half_width() const {
    return sample_box.value_or(amplitude_box);
  }
  void validate() const;
};

// ---------------------------------------------------------------------------
// Gradient of the trace fidelity with respect to every slice amplitude.

struct FidelityGradient {
  double fidelity = 0.0;
  RealVector gradient;
};

// Analytic mode differentiates each slice exponential in its own eigenbasis
// and chains the result through the ordered product; throws NumericalError
// when |Tr(U^dagger G)| < 1e-12. Finite-difference mode uses central
// differences with step `fd_step`.
FidelityGradient fidelity_and_gradient(const ChainModel& model,
                                       const ControlSequence& seq,
                                       const Matrix& gate, GradientMode mode,
                                       double fd_step = 1e-6);

RealVector fidelity_gradient(const SpinChainSpec& spec,
                             const ControlSequence& seq,
                             const TargetGate& gate, GradientMode mode,
                             double fd_step = 1e-6);

// ---------------------------------------------------------------------------
// Box-constrained BFGS maximizer.

enum class SearchStatus {
  kConverged,      // fidelity change or predicted gain below tolerance
  kMaxIterations,  // iteration budget exhausted while still improving
  kStalled,        // line search could not increase the objective
};

std::string to_string(SearchStatus status);

// Returns f(x); writes the gradient into *grad when grad is non-null.
using Objective = std::function<double(const RealVector& x, RealVector* grad)>;

struct BfgsOptions {
  double convergence_tol = 1e-12;
  double gradient_tol = 1e-10;
  int max_iters = 5000;
  double box = std::numeric_limits<double>::infinity();
  double sufficient_increase = 1e-4;
};

struct BfgsResult {
  RealVector x;
  double value = 0.0;
  RealVector gradient;
  int iterations = 0;
  int evaluations = 0;
  SearchStatus status = SearchStatus::kStalled;
  // Objective after the seed evaluation and after every accepted iteration.
  std::vector<double> history;
};

// Maximizes `f` from `x0`. The inverse-Hessian estimate starts at the
// identity; updates are skipped when the curvature condition fails.
BfgsResult maximize_bfgs(const Objective& f, RealVector x0,
                         const BfgsOptions& options);

// ---------------------------------------------------------------------------
// Multistart global search.

struct LocalSearchSummary {
  int start_index = 0;
  double initial_fidelity = 0.0;
  double final_fidelity = 0.0;
  int iterations = 0;
  SearchStatus status = SearchStatus::kStalled;
};

struct OptimizationReport {
  ControlSequence best_sequence{std::vector<double>(2, 0.0), 1.0};
  double best_fidelity = 0.0;
  SearchStatus best_status = SearchStatus::kStalled;
  std::vector<LocalSearchSummary> local_searches;
  std::vector<double> fidelity_history;  // best local search, per iteration
  int n_starts = 0;
  int distinct_optima = 0;
  double wall_seconds = 0.0;
  std::uint64_t rng_seed = 0;

  double gate_error() const { return 1.0 - best_fidelity; }
};

OptimizationReport local_search_bfgs(const ChainModel& model,
                                     const ControlSequence& seed,
                                     const Matrix& gate,
                                     const OptimizerConfig& config);

OptimizationReport local_search_bfgs(const SpinChainSpec& spec,
                                     const ControlSequence& seed,
                                     const TargetGate& gate,
                                     const OptimizerConfig& config);

// Samples n_starts amplitude vectors uniformly in the box, refines the
// n_select best with BFGS and returns the overall maximum. Deterministic in
// rng_seed and independent of the thread count.
OptimizationReport global_search(const ChainModel& model,
                                 const TargetGate& gate, int n_pulses,
                                 double slice_duration,
                                 const OptimizerConfig& config);

OptimizationReport global_search(const SpinChainSpec& spec,
                                 const TargetGate& gate, int n_pulses,
                                 double slice_duration,
                                 const OptimizerConfig& config);

struct TimeScanRow {
  double total_time = 0.0;
  OptimizationReport report;
};

struct TimeScanResult {
  double target_error = 0.0;
  std::vector<TimeScanRow> rows;  // ascending total_time
  std::optional<double> shortest_time;

  bool threshold_reached() const { return shortest_time.has_value(); }
};

// Runs global_search at every total time (N_f fixed, T = t_f / N_f). With
// `stop_at_first`, the scan ends at the first qualifying time. Each point
// uses a seed derived from config.rng_seed and its grid index.
TimeScanResult gate_time_scan(const ChainModel& model, const TargetGate& gate,
                              int n_pulses, std::vector<double> total_times,
                              double target_error,
                              const OptimizerConfig& config,
                              bool stop_at_first = false);

// Ascending grid lo, lo + step, ..., up to hi (inclusive within 1e-9).
std::vector<double> time_grid(double lo, double hi, double step);

}  // namespace chaingate
