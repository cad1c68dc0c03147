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

#include <optional>
#include <string>
#include <vector>

#include "chaingate/io.hpp"

namespace chaingate {

struct ScheduleConfig {
  int n_pulses = 70;
  std::optional<double> slice_duration{};
  std::optional<double> total_time{};

  // Requires at least one of slice_duration / total_time; when both are
  // given they must satisfy t_f = N_f T.
  void validate() const;
  double resolved_slice_duration() const;
  double resolved_total_time() const;
};

struct ScanAxes {
  std::vector<double> total_times;  // 1/J
  std::vector<double> cutoffs;      // J
  std::vector<double> leakages;     // dimensionless
  std::vector<double> fields;       // Omega, J

  int populated() const;
};

enum class ScanAxis { kNone, kTotalTime, kCutoff, kLeakage, kField };

struct ExperimentConfig {
  SpinChainSpec spec{};
  TargetGate gate = TargetGate::toffoli();
  ScheduleConfig schedule{};
  OptimizerConfig optimizer{};
  ScanAxes axes{};
  // Gate-error thresholds for time scans (first entry) and field scans.
  std::vector<double> target_errors{1e-2};
  std::string output{};
  std::string csv_output{};

  // Checks the fields a command with the given scan axis needs, plus the
  // one-axis-per-invocation rule.
  void validate(ScanAxis axis) const;
};

Json to_json(const ExperimentConfig& config);
// Missing sections keep defaults; validation is left to the command.
ExperimentConfig experiment_config_from_json(const Json& j);

// Default grids.
std::vector<double> default_leakage_grid();  // 2.0, 2.1, ..., 8.0
std::vector<double> default_cutoff_grid();   // 2, 3, ..., 40 J
std::vector<double> table_field_values();    // 0, 0.1, ..., 1.1, 1.5

// Gate flag syntax: toffoli | fredkin | cnot[:c,t] | eswap:THETA[:a,b].
// THETA accepts plain radians or pi fractions such as "pi/4" or "2pi/3".
// eSWAP defaults to a standalone 2-qubit chain; `embedded_eswap` places it
// on qubits 2,3 of an N=3 chain instead.
TargetGate parse_gate(const std::string& text, int n_qubits,
                      bool embedded_eswap = false);
double parse_angle(const std::string& text);

// Parses "lo:hi:step" or a comma-separated list.
std::vector<double> parse_grid(const std::string& text);

// --- result files ---------------------------------------------------------

struct StoredResult {
  SpinChainSpec spec;
  TargetGate gate;
  ControlSequence sequence{std::vector<double>(2, 0.0), 1.0};
  double fidelity = 0.0;
  std::uint64_t rng_seed = 0;
  Json document;
};

Json make_result_document(const std::string& command,
                          const ExperimentConfig& config,
                          const OptimizationReport& report);
StoredResult load_result(const std::string& path);
StoredResult parse_result(const Json& document);

// Fidelity of the stored sequence recomputed from its stored spec and gate.
double reevaluate(const StoredResult& result);

// --- commands -------------------------------------------------------------

Json cmd_optimize(const ExperimentConfig& config);

struct EvaluateOutcome {
  double stored_fidelity = 0.0;
  double recomputed_fidelity = 0.0;
  bool reproduced = false;  // agreement within 1e-12
};
EvaluateOutcome cmd_evaluate(const std::string& result_path);

struct TimeScanOutcome {
  TimeScanResult scan;
  CsvTable table;
};
TimeScanOutcome cmd_scan_time(const ExperimentConfig& config,
                              bool stop_at_first = false);

// (t, h_x, h_y) traces for the filtered fields and their PWC source.
CsvTable cmd_filter(const StoredResult& result, double cutoff,
                    int points_per_slice);

CsvTable cmd_scan_cutoff(const StoredResult& result,
                         const std::vector<double>& cutoffs,
                         const FilteredOptions& options = {},
                         unsigned threads = 0);

struct LeakagePoint {
  double leakage = 0.0;
  double fidelity = 0.0;
};
struct LeakageScanOutcome {
  std::vector<LeakagePoint> points;
  CsvTable table;
};
// Evaluates the stored (leakage-free) optimum under leakage-weighted
// controls for every leakage value.
LeakageScanOutcome cmd_leakage_scan(const StoredResult& result,
                                    const std::vector<double>& leakages);

// Re-runs the global search with leakage-weighted controls at `leakage`.
// Schedule, gate and chain come from the stored result unless overridden.
Json cmd_reoptimize_with_leakage(const StoredResult& result, double leakage,
                                 const OptimizerConfig& optimizer,
                                 std::optional<double> total_time = {},
                                 std::optional<int> n_pulses = {});

struct FieldScanRow {
  double field = 0.0;
  double target_error = 0.0;
  std::optional<double> shortest_time;
};
struct FieldScanOutcome {
  std::vector<FieldScanRow> rows;
  CsvTable table;
};
// Gate-time scan per (Omega, target error) with drift including the global
// field; scans stop at the first qualifying time.
FieldScanOutcome cmd_field_scan(const ExperimentConfig& config);

DlaReport cmd_dla(const SpinChainSpec& spec, const std::string& control_set);

}  // namespace chaingate
