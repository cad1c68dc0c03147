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

#include "chaingate/experiment.hpp"

#include "chaingate/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <numbers>
#include <tuple>
#include <sstream>

namespace chaingate {
namespace {

constexpr double kReplayTol = 1e-12;

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Json grid_json(const std::vector<double>& v) {
  return v.empty() ? Json::array() : Json(v);
}

std::vector<double> grid_from(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return {};
  const Json& g = j.at(key);
  if (g.is_string()) return parse_grid(g.get<std::string>());
  return g.get<std::vector<double>>();
}

std::string gate_metadata(const TargetGate& gate) {
  if (gate.kind != GateKind::kESwap) return "";
  return gate.n_qubits == 2 ? "eswap on a standalone N=2 chain"
                            : "eswap embedded in an N=" +
                                  std::to_string(gate.n_qubits) + " chain";
}

void check_gate_fits(const ExperimentConfig& c) {
  if (c.gate.n_qubits != c.spec.n_qubits) {
    throw ValidationError("gate.n_qubits (" + std::to_string(c.gate.n_qubits) +
                          ") must equal spec.n_qubits (" +
                          std::to_string(c.spec.n_qubits) + ")");
  }
}

}  // namespace

// --- configuration -------------------------------------------------------

void ScheduleConfig::validate() const {
  if (n_pulses < 2 || n_pulses % 2 != 0) {
    throw ValidationError("schedule.n_pulses must be even and >= 2");
  }
  if (!slice_duration && !total_time) {
    throw ValidationError("schedule needs slice_duration or total_time");
  }
  if (slice_duration && !(*slice_duration > 0.0)) {
    throw ValidationError("schedule.slice_duration must be positive");
  }
  if (total_time && !(*total_time > 0.0)) {
    throw ValidationError("schedule.total_time must be positive");
  }
  if (slice_duration && total_time) {
    const double implied = *slice_duration * n_pulses;
    if (std::abs(implied - *total_time) > 1e-12 * std::abs(*total_time)) {
      throw ValidationError(
          "schedule.total_time must equal n_pulses * slice_duration");
    }
  }
}

double ScheduleConfig::resolved_slice_duration() const {
  validate();
  return slice_duration ? *slice_duration : *total_time / n_pulses;
}

double ScheduleConfig::resolved_total_time() const {
  validate();
  return total_time ? *total_time : *slice_duration * n_pulses;
}

int ScanAxes::populated() const {
  return !total_times.empty() + !cutoffs.empty() + !leakages.empty() +
         !fields.empty();
}

void ExperimentConfig::validate(ScanAxis axis) const {
  spec.validate();
  optimizer.validate();
  gate_matrix(gate);
  check_gate_fits(*this);
  const int count = axes.populated();
  const bool wanted_present =
      (axis == ScanAxis::kTotalTime && !axes.total_times.empty()) ||
      (axis == ScanAxis::kCutoff && !axes.cutoffs.empty()) ||
      (axis == ScanAxis::kLeakage && !axes.leakages.empty()) ||
      (axis == ScanAxis::kField && !axes.fields.empty());
  if (axis == ScanAxis::kNone) {
    if (count != 0) {
      throw ValidationError("axes: a single run takes no scan axis");
    }
    schedule.validate();
    return;
  }
  if (axis == ScanAxis::kField) {
    // A field scan is a grid over Omega with an inner time scan.
    if (axes.fields.empty() || axes.total_times.empty() ||
        !axes.cutoffs.empty() || !axes.leakages.empty()) {
      throw ValidationError(
          "axes: scan-field needs exactly the fields axis (plus its "
          "total_times grid)");
    }
  } else if (!wanted_present || count != 1) {
    throw ValidationError("axes: exactly one scan axis must be set");
  }
  if (axis == ScanAxis::kTotalTime || axis == ScanAxis::kField) {
    if (schedule.n_pulses < 2 || schedule.n_pulses % 2 != 0) {
      throw ValidationError("schedule.n_pulses must be even and >= 2");
    }
    if (target_errors.empty()) {
      throw ValidationError("target_errors must not be empty");
    }
    for (double e : target_errors) {
      if (!(e > 0.0 && e < 1.0)) {
        throw ValidationError("target_errors entries must lie in (0, 1)");
      }
    }
  }
}

Json to_json(const ExperimentConfig& c) {
  Json j;
  j["spec"] = to_json(c.spec);
  j["gate"] = to_json(c.gate);
  Json schedule;
  schedule["n_pulses"] = c.schedule.n_pulses;
  if (c.schedule.slice_duration) {
    schedule["slice_duration"] = *c.schedule.slice_duration;
  }
  if (c.schedule.total_time) schedule["total_time"] = *c.schedule.total_time;
  j["schedule"] = schedule;
  j["optimizer"] = to_json(c.optimizer);
  j["axes"] = {{"total_times", grid_json(c.axes.total_times)},
               {"cutoffs", grid_json(c.axes.cutoffs)},
               {"leakages", grid_json(c.axes.leakages)},
               {"fields", grid_json(c.axes.fields)}};
  j["target_errors"] = c.target_errors;
  return j;
}

ExperimentConfig experiment_config_from_json(const Json& j) {
  ExperimentConfig c;
  if (j.contains("spec")) c.spec = spin_chain_from_json(j.at("spec"));
  if (j.contains("gate")) {
    c.gate = target_gate_from_json(j.at("gate"));
  } else {
    c.gate.n_qubits = c.spec.n_qubits;
  }
  if (j.contains("schedule")) {
    const Json& s = j.at("schedule");
    c.schedule.n_pulses = s.value("n_pulses", c.schedule.n_pulses);
    if (s.contains("slice_duration")) {
      c.schedule.slice_duration = s.at("slice_duration").get<double>();
    }
    if (s.contains("total_time")) {
      c.schedule.total_time = s.at("total_time").get<double>();
    }
  }
  if (j.contains("optimizer")) {
    c.optimizer = optimizer_config_from_json(j.at("optimizer"));
  }
  if (j.contains("axes")) {
    const Json& a = j.at("axes");
    c.axes.total_times = grid_from(a, "total_times");
    c.axes.cutoffs = grid_from(a, "cutoffs");
    c.axes.leakages = grid_from(a, "leakages");
    c.axes.fields = grid_from(a, "fields");
  }
  if (j.contains("target_errors")) {
    c.target_errors = j.at("target_errors").get<std::vector<double>>();
  }
  c.output = j.value("output", std::string{});
  c.csv_output = j.value("csv_output", std::string{});
  return c;
}

std::vector<double> default_leakage_grid() {
  std::vector<double> g;
  for (int i = 20; i <= 80; ++i) g.push_back(i / 10.0);
  return g;
}

std::vector<double> default_cutoff_grid() {
  std::vector<double> g;
  for (int w = 2; w <= 40; ++w) g.push_back(w);
  return g;
}

std::vector<double> table_field_values() {
  return {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0, 1.1, 1.5};
}

std::vector<double> parse_grid(const std::string& text) {
  auto number = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw ValidationError("malformed grid entry '" + s + "' in '" + text +
                            "'");
    }
  };
  std::vector<std::string> parts;
  const char sep = text.find(':') != std::string::npos ? ':' : ',';
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, sep);) parts.push_back(part);
  if (sep == ':') {
    if (parts.size() != 3) {
      throw ValidationError("range grid must read lo:hi:step, got '" + text +
                            "'");
    }
    const double lo = number(parts[0]);
    const double hi = number(parts[1]);
    const double step = number(parts[2]);
    std::vector<double> g = time_grid(lo, hi, step);
    // Snap accumulated roundoff to the step's decimal resolution.
    for (double& v : g) v = std::round(v * 1e9) / 1e9;
    return g;
  }
  std::vector<double> g;
  for (const std::string& p : parts) g.push_back(number(p));
  if (g.empty()) throw ValidationError("empty grid '" + text + "'");
  return g;
}

double parse_angle(const std::string& text) {
  const auto pos = text.find("pi");
  try {
    if (pos == std::string::npos) {
      std::size_t used = 0;
      const double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    }
    double numerator = 1.0;
    if (pos > 0) {
      std::string head = text.substr(0, pos);
      if (!head.empty() && head.back() == '*') head.pop_back();
      numerator = std::stod(head);
    }
    double denominator = 1.0;
    const std::string tail = text.substr(pos + 2);
    if (!tail.empty()) {
      if (tail.front() != '/') throw std::invalid_argument(text);
      denominator = std::stod(tail.substr(1));
    }
    return numerator * std::numbers::pi / denominator;
  } catch (const std::exception&) {
    throw ValidationError("malformed angle '" + text + "'");
  }
}

TargetGate parse_gate(const std::string& text, int n_qubits,
                      bool embedded_eswap) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.empty()) throw ValidationError("--gate: empty gate name");
  auto pair = [&](const std::string& s) {
    const auto comma = s.find(',');
    if (comma == std::string::npos) {
      throw ValidationError("--gate: expected a qubit pair 'a,b', got '" + s +
                            "'");
    }
    try {
      return std::pair{std::stoi(s.substr(0, comma)),
                       std::stoi(s.substr(comma + 1))};
    } catch (const std::exception&) {
      throw ValidationError("--gate: malformed qubit pair '" + s + "'");
    }
  };
  const std::string& name = parts[0];
  TargetGate gate;
  if (name == "toffoli" && parts.size() == 1) {
    gate = TargetGate::toffoli(n_qubits);
  } else if (name == "fredkin" && parts.size() == 1) {
    gate = TargetGate::fredkin(n_qubits);
  } else if (name == "cnot" && parts.size() <= 2) {
    const auto [c, t] = parts.size() == 2 ? pair(parts[1]) : std::pair{2, 3};
    gate = TargetGate::cnot(c, t, n_qubits);
  } else if (name == "eswap" && parts.size() >= 2 && parts.size() <= 3) {
    const double theta = parse_angle(parts[1]);
    const int n = embedded_eswap ? n_qubits : 2;
    auto [a, b] = embedded_eswap ? std::pair{2, 3} : std::pair{1, 2};
    if (parts.size() == 3) std::tie(a, b) = pair(parts[2]);
    gate = TargetGate::eswap(theta, a, b, n);
  } else {
    throw ValidationError("--gate: unrecognised gate '" + text + "'");
  }
  gate_matrix(gate);
  return gate;
}

// --- result files --------------------------------------------------------

Json make_result_document(const std::string& command,
                          const ExperimentConfig& config,
                          const OptimizationReport& report) {
  Json doc;
  doc["schema_version"] = kResultSchemaVersion;
  doc["toolkit_version"] = kToolkitVersion;
  doc["command"] = command;
  doc["created_utc"] = utc_timestamp();
  doc["config"] = to_json(config);
  doc["report"] = to_json(report);
  const std::string meta = gate_metadata(config.gate);
  if (!meta.empty()) doc["metadata"] = {{"gate_embedding", meta}};
  return doc;
}

StoredResult parse_result(const Json& doc) {
  try {
    if (doc.at("schema_version").get<int>() != kResultSchemaVersion) {
      throw ValidationError("unsupported result schema_version");
    }
    StoredResult r;
    r.spec = spin_chain_from_json(doc.at("config").at("spec"));
    r.gate = target_gate_from_json(doc.at("config").at("gate"));
    const Json& report = doc.at("report");
    r.sequence = control_sequence_from_json(report.at("best_sequence"));
    r.fidelity = report.contains("best_fidelity_hex")
                     ? from_hex_float(report.at("best_fidelity_hex").get<std::string>())
                     : report.at("best_fidelity").get<double>();
    r.rng_seed = report.value<std::uint64_t>("rng_seed", 0);
    r.document = doc;
    return r;
  } catch (const Json::exception& e) {
    throw ValidationError(std::string("corrupt result document: ") + e.what());
  }
}

StoredResult load_result(const std::string& path) {
  return parse_result(read_json_file(path));
}

double reevaluate(const StoredResult& result) {
  return trace_fidelity(propagate(result.spec, result.sequence),
                        gate_matrix(result.gate));
}

// --- commands ------------------------------------------------------------

Json cmd_optimize(const ExperimentConfig& config) {
  config.validate(ScanAxis::kNone);
  const OptimizationReport report = global_search(
      config.spec, config.gate, config.schedule.n_pulses,
      config.schedule.resolved_slice_duration(), config.optimizer);
  Json doc = make_result_document("optimize", config, report);
  if (!config.output.empty()) write_json_file(config.output, doc);
  return doc;
}

EvaluateOutcome cmd_evaluate(const std::string& result_path) {
  const StoredResult r = load_result(result_path);
  EvaluateOutcome out;
  out.stored_fidelity = r.fidelity;
  out.recomputed_fidelity = reevaluate(r);
  out.reproduced =
      std::abs(out.stored_fidelity - out.recomputed_fidelity) <= kReplayTol;
  return out;
}

TimeScanOutcome cmd_scan_time(const ExperimentConfig& config,
                              bool stop_at_first) {
  config.validate(ScanAxis::kTotalTime);
  TimeScanOutcome out;
  out.scan = gate_time_scan(ChainModel(config.spec), config.gate,
                            config.schedule.n_pulses, config.axes.total_times,
                            config.target_errors.front(), config.optimizer,
                            stop_at_first);
  out.table.header = {"total_time[1/J]", "n_pulses", "best_fidelity",
                      "gate_error", "qualifies", "rng_seed"};
  const double threshold = 1.0 - out.scan.target_error;
  for (const TimeScanRow& row : out.scan.rows) {
    out.table.add_row({format_double(row.total_time),
                       std::to_string(config.schedule.n_pulses),
                       format_double(row.report.best_fidelity),
                       format_double(row.report.gate_error()),
                       row.report.best_fidelity >= threshold ? "1" : "0",
                       std::to_string(row.report.rng_seed)});
  }
  return out;
}

CsvTable cmd_filter(const StoredResult& result, double cutoff,
                    int points_per_slice) {
  const FilteredControl filtered(result.sequence, cutoff);
  CsvTable table;
  table.header = {"t[1/J]", "hx_filtered[J]", "hy_filtered[J]", "hx_pwc[J]",
                  "hy_pwc[J]"};
  const double slice = result.sequence.slice_duration();
  const auto amps = result.sequence.amplitudes();
  for (const FieldSample& s : sample_fields(filtered, points_per_slice)) {
    int k = static_cast<int>(std::floor(s.t / slice));
    k = std::clamp(k, 0, result.sequence.n_pulses() - 1);
    const double pwc_x = k % 2 == 0 ? amps[k] : 0.0;
    const double pwc_y = k % 2 == 1 ? amps[k] : 0.0;
    table.add_row({format_double(s.t), format_double(s.hx),
                   format_double(s.hy), format_double(pwc_x),
                   format_double(pwc_y)});
  }
  return table;
}

CsvTable cmd_scan_cutoff(const StoredResult& result,
                         const std::vector<double>& cutoffs,
                         const FilteredOptions& options, unsigned threads) {
  if (cutoffs.empty()) throw ValidationError("empty cutoff grid");
  const ChainModel model(result.spec);
  const auto rows = cutoff_scan(model, result.sequence,
                                gate_matrix(result.gate), cutoffs, options,
                                threads);
  CsvTable table;
  table.header = {"omega0[J]", "gate_error", "fidelity", "substeps",
                  "converged", "pwc_fidelity"};
  for (const CutoffRow& r : rows) {
    table.add_row({format_double(r.cutoff), format_double(r.gate_error()),
                   format_double(r.fidelity), std::to_string(r.substeps),
                   r.converged ? "1" : "0", format_double(result.fidelity)});
  }
  return table;
}

LeakageScanOutcome cmd_leakage_scan(const StoredResult& result,
                                    const std::vector<double>& leakages) {
  if (leakages.empty()) throw ValidationError("empty leakage grid");
  if (result.spec.leakage) {
    throw ValidationError(
        "scan-leakage expects a sequence optimized without leakage");
  }
  const Matrix gate = gate_matrix(result.gate);
  LeakageScanOutcome out;
  out.points.resize(leakages.size());
  for (std::size_t i = 0; i < leakages.size(); ++i) {
    SpinChainSpec spec = result.spec;
    spec.leakage = leakages[i];
    out.points[i] = {leakages[i],
                     trace_fidelity(propagate(spec, result.sequence), gate)};
  }
  out.table.header = {"mu_L",          "fidelity",
                      "gate_error",    "stray_weight_neighbour",
                      "source_fidelity", "source_rng_seed"};
  for (const LeakagePoint& p : out.points) {
    out.table.add_row(
        {format_double(p.leakage), format_double(p.fidelity),
         format_double(1.0 - p.fidelity),
         format_double(leakage_weight(p.leakage, result.spec.actuator + 1,
                                      result.spec.actuator)),
         format_double(result.fidelity), std::to_string(result.rng_seed)});
  }
  return out;
}

Json cmd_reoptimize_with_leakage(const StoredResult& result, double leakage,
                                 const OptimizerConfig& optimizer,
                                 std::optional<double> total_time,
                                 std::optional<int> n_pulses) {
  if (!(leakage >= 0.0)) throw ValidationError("mu must be >= 0");
  ExperimentConfig config;
  config.spec = result.spec;
  config.spec.leakage = leakage;
  config.gate = result.gate;
  config.optimizer = optimizer;
  config.schedule.n_pulses = n_pulses.value_or(result.sequence.n_pulses());
  config.schedule.total_time =
      total_time.value_or(result.sequence.total_time());
  config.validate(ScanAxis::kNone);
  const OptimizationReport report = global_search(
      config.spec, config.gate, config.schedule.n_pulses,
      config.schedule.resolved_slice_duration(), config.optimizer);
  Json doc = make_result_document("reopt-leakage", config, report);
  doc["source"] = {{"fidelity", result.fidelity},
                   {"rng_seed", result.rng_seed},
                   {"total_time", result.sequence.total_time()}};
  return doc;
}

FieldScanOutcome cmd_field_scan(const ExperimentConfig& config) {
  config.validate(ScanAxis::kField);
  FieldScanOutcome out;
  out.table.header = {"omega[J]", "target_error", "shortest_time[1/J]",
                      "reached"};
  for (std::size_t i = 0; i < config.axes.fields.size(); ++i) {
    SpinChainSpec spec = config.spec;
    spec.global_field = config.axes.fields[i];
    const ChainModel model(spec);
    for (std::size_t e = 0; e < config.target_errors.size(); ++e) {
      OptimizerConfig opt = config.optimizer;
      opt.rng_seed = derive_seed(config.optimizer.rng_seed,
                                 i * config.target_errors.size() + e);
      const TimeScanResult scan = gate_time_scan(
          model, config.gate, config.schedule.n_pulses,
          config.axes.total_times, config.target_errors[e], opt, true);
      out.rows.push_back(
          {spec.global_field, config.target_errors[e], scan.shortest_time});
      out.table.add_row(
          {format_double(spec.global_field),
           format_double(config.target_errors[e]),
           scan.shortest_time ? format_double(*scan.shortest_time) : "",
           scan.shortest_time ? "1" : "0"});
    }
  }
  return out;
}

DlaReport cmd_dla(const SpinChainSpec& spec, const std::string& control_set) {
  return chain_dla(spec, parse_control_set(control_set));
}

}  // namespace chaingate
