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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>

#include "chaingate/optimize.hpp"
#include "chaingate/parallel.hpp"

namespace chaingate {
namespace {

constexpr double kSameOptimumFidelity = 1e-9;
constexpr double kSameOptimumAmplitude = 1e-6;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

struct LocalRun {
  BfgsResult bfgs;
  double initial_fidelity = 0.0;
};

LocalRun run_local(const ChainModel& model, const ControlSequence& seed,
                   const Matrix& gate, const OptimizerConfig& config) {
  const double slice = seed.slice_duration();
  Objective objective = [&](const RealVector& x, RealVector* grad) {
    ControlSequence seq(std::vector<double>(x.data(), x.data() + x.size()),
                        slice);
    if (grad == nullptr) return trace_fidelity(propagate(model, seq), gate);
    FidelityGradient fg = fidelity_and_gradient(
        model, seq, gate, config.gradient_mode, config.fd_step);
    *grad = std::move(fg.gradient);
    return fg.fidelity;
  };
  BfgsOptions options;
  options.convergence_tol = config.convergence_tol;
  options.gradient_tol = config.gradient_tol;
  options.max_iters = config.max_iters;
  options.box = config.amplitude_box;

  const auto amps = seed.amplitudes();
  RealVector x0 = Eigen::Map<const RealVector>(amps.data(), amps.size());
  LocalRun run;
  try {
    run.bfgs = maximize_bfgs(objective, x0, options);
    run.initial_fidelity = run.bfgs.history.front();
  } catch (const NumericalError&) {
    // Degenerate objective at the seed; report the seed as a stalled search.
    run.bfgs.x = x0;
    run.bfgs.value = trace_fidelity(propagate(model, seed), gate);
    run.bfgs.history = {run.bfgs.value};
    run.bfgs.status = SearchStatus::kStalled;
    run.initial_fidelity = run.bfgs.value;
  }
  return run;
}

ControlSequence to_sequence(const RealVector& x, double slice) {
  return ControlSequence(std::vector<double>(x.data(), x.data() + x.size()),
                         slice);
}

}  // namespace

void OptimizerConfig::validate() const {
  if (n_starts < 1) throw ValidationError("n_starts must be >= 1");
  if (n_select < 1 || n_select > n_starts) {
    throw ValidationError("n_select must lie in [1, n_starts]");
  }
  if (!(amplitude_box > 0.0)) {
    throw ValidationError("amplitude_box must be positive");
  }
  if (sample_box && !(*sample_box > 0.0 && *sample_box <= amplitude_box)) {
    throw ValidationError("sample_box must lie in (0, amplitude_box]");
  }
  if (!(fd_step > 0.0)) throw ValidationError("fd_step must be positive");
  if (!(convergence_tol >= 0.0)) {
    throw ValidationError("convergence_tol must be non-negative");
  }
  if (!(gradient_tol >= 0.0)) {
    throw ValidationError("gradient_tol must be non-negative");
  }
  if (max_iters < 0) throw ValidationError("max_iters must be non-negative");
  if (stop_fidelity && !(*stop_fidelity > 0.0 && *stop_fidelity <= 1.0)) {
    throw ValidationError("stop_fidelity must lie in (0, 1]");
  }
}

OptimizationReport local_search_bfgs(const ChainModel& model,
                                     const ControlSequence& seed,
                                     const Matrix& gate,
                                     const OptimizerConfig& config) {
  config.validate();
  seed.check_box(config.amplitude_box);
  const auto start = std::chrono::steady_clock::now();
  LocalRun run = run_local(model, seed, gate, config);

  OptimizationReport report;
  report.best_sequence = to_sequence(run.bfgs.x, seed.slice_duration());
  report.best_fidelity = run.bfgs.value;
  report.best_status = run.bfgs.status;
  report.local_searches.push_back({0, run.initial_fidelity, run.bfgs.value,
                                   run.bfgs.iterations, run.bfgs.status});
  report.fidelity_history = std::move(run.bfgs.history);
  report.n_starts = 1;
  report.distinct_optima = 1;
  report.rng_seed = config.rng_seed;
  report.wall_seconds = seconds_since(start);
  return report;
}

OptimizationReport local_search_bfgs(const SpinChainSpec& spec,
                                     const ControlSequence& seed,
                                     const TargetGate& gate,
                                     const OptimizerConfig& config) {
  return local_search_bfgs(ChainModel(spec), seed, gate_matrix(gate), config);
}

OptimizationReport global_search(const ChainModel& model,
                                 const TargetGate& gate, int n_pulses,
                                 double slice_duration,
                                 const OptimizerConfig& config) {
  config.validate();
  const Matrix target = gate_matrix(gate);
  if (target.rows() != model.dim()) {
    throw ValidationError("gate dimension does not match the chain");
  }
  // Validates n_pulses and slice_duration.
  ControlSequence::zeros(n_pulses, slice_duration);
  const auto start = std::chrono::steady_clock::now();

  std::mt19937_64 rng(config.rng_seed);
  std::uniform_real_distribution<double> uniform(-config.start_half_width(),
                                                 config.start_half_width());
  std::vector<ControlSequence> samples;
  samples.reserve(config.n_starts);
  for (int s = 0; s < config.n_starts; ++s) {
    std::vector<double> amps(n_pulses);
    for (double& h : amps) h = uniform(rng);
    samples.emplace_back(std::move(amps), slice_duration);
  }

  std::vector<double> sample_fidelity(config.n_starts);
  parallel_for(samples.size(), config.threads, [&](std::size_t i) {
    sample_fidelity[i] = trace_fidelity(propagate(model, samples[i]), target);
  });

  std::vector<int> order(config.n_starts);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return sample_fidelity[a] > sample_fidelity[b];
  });
  order.resize(config.n_select);

  // Searches are claimed in rank order. With a stop fidelity, ranks after
  // the first qualifying one are skipped or discarded, so the outcome does
  // not depend on scheduling.
  std::vector<std::optional<LocalRun>> runs(order.size());
  std::atomic<std::size_t> first_hit{order.size()};
  parallel_for(order.size(), config.threads, [&](std::size_t rank) {
    if (rank > first_hit.load()) return;
    LocalRun run = run_local(model, samples[order[rank]], target, config);
    if (config.stop_fidelity && run.bfgs.value >= *config.stop_fidelity) {
      std::size_t seen = first_hit.load();
      while (rank < seen && !first_hit.compare_exchange_weak(seen, rank)) {
      }
    }
    runs[rank] = std::move(run);
  });
  const std::size_t used = std::min(order.size(), first_hit.load() + 1);

  OptimizationReport report;
  report.n_starts = config.n_starts;
  report.rng_seed = config.rng_seed;
  std::size_t best = 0;
  for (std::size_t rank = 0; rank < used; ++rank) {
    const LocalRun& run = *runs[rank];
    report.local_searches.push_back({order[rank], run.initial_fidelity,
                                     run.bfgs.value, run.bfgs.iterations,
                                     run.bfgs.status});
    const LocalRun& incumbent = *runs[best];
    if (run.bfgs.value > incumbent.bfgs.value ||
        (run.bfgs.value == incumbent.bfgs.value &&
         order[rank] < order[best])) {
      best = rank;
    }
  }

  // Distinct optima among the refined points.
  std::vector<std::size_t> reps;
  for (std::size_t rank = 0; rank < used; ++rank) {
    const BfgsResult& a = runs[rank]->bfgs;
    const bool seen = std::any_of(reps.begin(), reps.end(), [&](std::size_t r) {
      const BfgsResult& b = runs[r]->bfgs;
      return std::abs(a.value - b.value) <= kSameOptimumFidelity &&
             (a.x - b.x).lpNorm<Eigen::Infinity>() <= kSameOptimumAmplitude;
    });
    if (!seen) reps.push_back(rank);
  }
  report.distinct_optima = static_cast<int>(reps.size());

  LocalRun& winner = *runs[best];
  report.best_sequence = to_sequence(winner.bfgs.x, slice_duration);
  report.best_fidelity = winner.bfgs.value;
  report.best_status = winner.bfgs.status;
  report.fidelity_history = std::move(winner.bfgs.history);
  report.wall_seconds = seconds_since(start);
  return report;
}

OptimizationReport global_search(const SpinChainSpec& spec,
                                 const TargetGate& gate, int n_pulses,
                                 double slice_duration,
                                 const OptimizerConfig& config) {
  return global_search(ChainModel(spec), gate, n_pulses, slice_duration,
                       config);
}

std::vector<double> time_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) {
    throw ValidationError("time grid requires step > 0 and hi >= lo");
  }
  std::vector<double> grid;
  for (int i = 0;; ++i) {
    const double t = lo + i * step;
    if (t > hi + 1e-9) break;
    grid.push_back(t);
  }
  return grid;
}

TimeScanResult gate_time_scan(const ChainModel& model, const TargetGate& gate,
                              int n_pulses, std::vector<double> total_times,
                              double target_error,
                              const OptimizerConfig& config,
                              bool stop_at_first) {
  if (!(target_error > 0.0 && target_error < 1.0)) {
    throw ValidationError("target_error must lie in (0, 1)");
  }
  if (total_times.empty()) throw ValidationError("empty total-time grid");
  std::sort(total_times.begin(), total_times.end());

  TimeScanResult scan;
  scan.target_error = target_error;
  const double threshold = 1.0 - target_error;
  for (std::size_t i = 0; i < total_times.size(); ++i) {
    OptimizerConfig point = config;
    point.rng_seed = derive_seed(config.rng_seed, i);
    if (!point.stop_fidelity) point.stop_fidelity = threshold;
    const double tf = total_times[i];
    scan.rows.push_back(
        {tf, global_search(model, gate, n_pulses, tf / n_pulses, point)});
    if (scan.rows.back().report.best_fidelity >= threshold) {
      if (!scan.shortest_time) scan.shortest_time = tf;
      if (stop_at_first) break;
    }
  }
  return scan;
}

}  // namespace chaingate
