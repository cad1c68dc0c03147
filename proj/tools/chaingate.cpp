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

// Command-line front end: optimization runs, scans and controllability checks
// with replayable JSON results and CSV tables.

#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "chaingate/experiment.hpp"

namespace {

using namespace chaingate;

struct Flags {
  std::string config;
  std::string gate;
  std::optional<int> chain;
  std::string coupling;
  std::string omega;
  std::string mu;
  std::optional<int> actuator;
  bool eswap_embedded = false;
  std::optional<int> nf;
  std::optional<double> tf;
  std::optional<double> slice;
  std::string tf_grid;
  std::string cutoff;
  std::string target_error;
  std::optional<int> restarts;
  std::optional<int> top;
  std::optional<std::uint64_t> seed;
  std::optional<double> box;
  std::optional<double> sample_box;
  std::optional<int> max_iters;
  std::string gradient;
  std::optional<unsigned> threads;
  std::string out;
  std::string result;
  std::string controls = "xy";
  int points = 20;
  bool stop_at_first = false;
};

Coupling parse_coupling(const std::string& text) {
  if (text == "xxx") return Coupling::xxx();
  if (text.rfind("xxz:", 0) == 0) return Coupling::xxz(std::stod(text.substr(4)));
  if (text.rfind("xyz:", 0) == 0) {
    const std::vector<double> j = parse_grid(text.substr(4));
    if (j.size() != 3) throw ValidationError("--coupling xyz needs jx,jy,jz");
    return Coupling::xyz(j[0], j[1], j[2]);
  }
  throw ValidationError("--coupling: expected xxx, xxz:DELTA or xyz:JX,JY,JZ");
}

double single_value(const std::string& text, const char* flag) {
  const std::vector<double> v = parse_grid(text);
  if (v.size() != 1) {
    throw ValidationError(std::string(flag) + " takes a single value here");
  }
  return v.front();
}

// Config file first, then command-line overrides.
ExperimentConfig build_config(const Flags& f, bool omega_is_grid,
                              bool mu_is_grid) {
  ExperimentConfig c;
  if (!f.config.empty()) c = experiment_config_from_json(read_json_file(f.config));
  if (f.chain) c.spec.n_qubits = *f.chain;
  if (!f.coupling.empty()) c.spec.coupling = parse_coupling(f.coupling);
  if (f.actuator) c.spec.actuator = *f.actuator;
  if (!f.omega.empty()) {
    if (omega_is_grid) {
      c.axes.fields = parse_grid(f.omega);
    } else {
      c.spec.global_field = single_value(f.omega, "--omega");
    }
  }
  if (!f.mu.empty()) {
    if (mu_is_grid) {
      c.axes.leakages = parse_grid(f.mu);
    } else if (f.mu == "none") {
      c.spec.leakage.reset();
    } else {
      c.spec.leakage = single_value(f.mu, "--mu");
    }
  }
  if (!f.gate.empty()) {
    c.gate = parse_gate(f.gate, c.spec.n_qubits, f.eswap_embedded);
    // A standalone eSWAP fixes the chain length.
    c.spec.n_qubits = c.gate.n_qubits;
  } else if (c.gate.kind != GateKind::kCustom) {
    c.gate.n_qubits = c.spec.n_qubits;
  }
  if (f.nf) c.schedule.n_pulses = *f.nf;
  if (f.tf) c.schedule.total_time = *f.tf;
  if (f.slice) c.schedule.slice_duration = *f.slice;
  if (f.tf && !f.slice) c.schedule.slice_duration.reset();
  if (f.slice && !f.tf) c.schedule.total_time.reset();
  if (!f.tf_grid.empty()) c.axes.total_times = parse_grid(f.tf_grid);
  if (!f.target_error.empty()) c.target_errors = parse_grid(f.target_error);
  if (f.restarts) c.optimizer.n_starts = *f.restarts;
  if (f.top) c.optimizer.n_select = *f.top;
  if (f.seed) c.optimizer.rng_seed = *f.seed;
  if (f.box) c.optimizer.amplitude_box = *f.box;
  if (f.sample_box) c.optimizer.sample_box = *f.sample_box;
  if (f.max_iters) c.optimizer.max_iters = *f.max_iters;
  if (f.threads) c.optimizer.threads = *f.threads;
  if (!f.gradient.empty()) {
    if (f.gradient == "analytic") {
      c.optimizer.gradient_mode = GradientMode::kAnalytic;
    } else if (f.gradient == "fd") {
      c.optimizer.gradient_mode = GradientMode::kFiniteDifference;
    } else {
      throw ValidationError("--gradient: expected analytic or fd");
    }
  }
  if (!f.out.empty()) c.output = f.out;
  return c;
}

void emit_table(const CsvTable& table, const std::string& path) {
  if (path.empty()) {
    table.write(std::cout);
  } else {
    table.write_file(path);
    std::cout << "wrote " << path << "\n";
  }
}

StoredResult require_result(const Flags& f) {
  if (f.result.empty()) throw ValidationError("--result <file> is required");
  return load_result(f.result);
}

void print_report_summary(const Json& doc) {
  const Json& r = doc.at("report");
  std::cout << "gate error   " << r.at("gate_error").get<double>() << "\n"
            << "fidelity     " << r.at("best_fidelity").get<double>() << "\n"
            << "status       " << r.at("status").get<std::string>() << "\n"
            << "wall time    " << r.at("timing").at("wall_seconds").get<double>()
            << " s\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-shot gate synthesis in Heisenberg qubit chains"};
  app.require_subcommand(1);
  Flags f;

  auto chain_opts = [&](CLI::App* s) {
    s->add_option("--config", f.config, "JSON experiment configuration");
    s->add_option("--gate", f.gate,
                  "toffoli | fredkin | cnot[:c,t] | eswap:THETA[:a,b]");
    s->add_option("--chain", f.chain, "number of qubits N");
    s->add_option("--coupling", f.coupling, "xxx | xxz:DELTA | xyz:JX,JY,JZ");
    s->add_option("--actuator", f.actuator, "1-based actuator qubit");
    s->add_flag("--eswap-embedded", f.eswap_embedded,
                "place eSWAP on qubits 2,3 of the N-qubit chain");
  };
  auto optimizer_opts = [&](CLI::App* s) {
    s->add_option("--restarts", f.restarts, "random start points (n_starts)");
    s->add_option("--top", f.top, "starts refined by BFGS (n_select)");
    s->add_option("--seed", f.seed, "RNG seed");
    s->add_option("--box", f.box, "amplitude bound A_max [J]");
    s->add_option("--sample-box", f.sample_box,
                  "half-width of the start distribution [J]");
    s->add_option("--max-iters", f.max_iters, "BFGS iteration cap");
    s->add_option("--gradient", f.gradient, "analytic | fd");
    s->add_option("--threads", f.threads, "worker threads (0 = all cores)");
  };
  auto schedule_opts = [&](CLI::App* s) {
    s->add_option("--nf", f.nf, "number of pulses N_f (even)");
    s->add_option("--tf", f.tf, "total time t_f [1/J]");
    s->add_option("--slice", f.slice, "slice duration T [1/J]");
  };

  auto* optimize = app.add_subcommand("optimize", "global search for one t_f");
  chain_opts(optimize);
  optimizer_opts(optimize);
  schedule_opts(optimize);
  optimize->add_option("--omega", f.omega, "global field Omega [J]");
  optimize->add_option("--mu", f.mu, "leakage mu_L (or 'none')");
  optimize->add_option("--out", f.out, "result JSON path");

  auto* evaluate = app.add_subcommand("evaluate", "replay a stored result");
  evaluate->add_option("--result", f.result, "result JSON")->required();

  auto* scan_time = app.add_subcommand("scan-time", "shortest gate time scan");
  chain_opts(scan_time);
  optimizer_opts(scan_time);
  scan_time->add_option("--nf", f.nf, "number of pulses N_f (even)");
  scan_time->add_option("--tf", f.tf_grid, "t_f grid, lo:hi:step or list")
      ->required();
  scan_time->add_option("--omega", f.omega, "global field Omega [J]");
  scan_time->add_option("--mu", f.mu, "leakage mu_L (or 'none')");
  scan_time->add_option("--target-error", f.target_error, "gate error goal");
  scan_time->add_flag("--stop-at-first", f.stop_at_first,
                      "stop at the first qualifying t_f");
  scan_time->add_option("--out", f.out, "CSV path");

  auto* filter = app.add_subcommand("filter", "export filtered field traces");
  filter->add_option("--result", f.result, "result JSON")->required();
  filter->add_option("--cutoff", f.cutoff, "cutoff omega_0 [J]")->required();
  filter->add_option("--points", f.points, "samples per slice");
  filter->add_option("--out", f.out, "CSV path");

  auto* scan_cutoff =
      app.add_subcommand("scan-cutoff", "filtered-field error vs cutoff");
  scan_cutoff->add_option("--result", f.result, "result JSON")->required();
  scan_cutoff->add_option("--cutoff", f.cutoff, "cutoff grid [J]");
  scan_cutoff->add_option("--threads", f.threads, "worker threads");
  scan_cutoff->add_option("--out", f.out, "CSV path");

  auto* scan_leakage =
      app.add_subcommand("scan-leakage", "leakage benchmark curve");
  scan_leakage->add_option("--result", f.result, "result JSON")->required();
  scan_leakage->add_option("--mu", f.mu, "mu_L grid");
  scan_leakage->add_option("--out", f.out, "CSV path");

  auto* reopt = app.add_subcommand("reopt-leakage",
                                   "re-optimize in the presence of leakage");
  reopt->add_option("--result", f.result, "result JSON")->required();
  reopt->add_option("--mu", f.mu, "extracted mu_L*")->required();
  reopt->add_option("--nf", f.nf, "number of pulses N_f (even)");
  reopt->add_option("--tf", f.tf, "total time t_f [1/J]");
  reopt->add_option("--config", f.config, "JSON optimizer configuration");
  optimizer_opts(reopt);
  reopt->add_option("--out", f.out, "result JSON path");

  auto* scan_field =
      app.add_subcommand("scan-field", "gate times vs global field");
  chain_opts(scan_field);
  optimizer_opts(scan_field);
  scan_field->add_option("--nf", f.nf, "number of pulses N_f (even)");
  scan_field->add_option("--omega", f.omega, "Omega grid [J]");
  scan_field->add_option("--tf", f.tf_grid, "t_f grid, lo:hi:step or list")
      ->required();
  scan_field->add_option("--target-error", f.target_error,
                         "gate error goals, comma separated");
  scan_field->add_option("--out", f.out, "CSV path");

  auto* dla = app.add_subcommand("dla", "dynamical Lie algebra dimension");
  chain_opts(dla);
  dla->add_option("--omega", f.omega, "global field Omega [J]");
  dla->add_option("--mu", f.mu, "leakage mu_L (or 'none')");
  dla->add_option("--controls", f.controls, "xy | x | y");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (optimize->parsed()) {
      const ExperimentConfig c = build_config(f, false, false);
      const Json doc = cmd_optimize(c);
      print_report_summary(doc);
      if (!c.output.empty()) std::cout << "wrote " << c.output << "\n";
    } else if (evaluate->parsed()) {
      const EvaluateOutcome e = cmd_evaluate(f.result);
      std::cout.precision(17);
      std::cout << "stored     " << e.stored_fidelity << "\n"
                << "recomputed " << e.recomputed_fidelity << "\n"
                << (e.reproduced ? "REPRODUCED" : "MISMATCH") << "\n";
      return e.reproduced ? 0 : 2;
    } else if (scan_time->parsed()) {
      ExperimentConfig c = build_config(f, false, false);
      c.output.clear();
      const TimeScanOutcome out = cmd_scan_time(c, f.stop_at_first);
      emit_table(out.table, f.out.empty() ? c.csv_output : f.out);
      if (out.scan.shortest_time) {
        std::cout << "shortest t_f " << *out.scan.shortest_time << " 1/J\n";
      } else {
        std::cout << "threshold not reached\n";
      }
    } else if (filter->parsed()) {
      emit_table(cmd_filter(require_result(f), single_value(f.cutoff, "--cutoff"),
                            f.points),
                 f.out);
    } else if (scan_cutoff->parsed()) {
      const auto grid =
          f.cutoff.empty() ? default_cutoff_grid() : parse_grid(f.cutoff);
      emit_table(cmd_scan_cutoff(require_result(f), grid, {},
                                 f.threads.value_or(0)),
                 f.out);
    } else if (scan_leakage->parsed()) {
      const auto grid = f.mu.empty() ? default_leakage_grid() : parse_grid(f.mu);
      emit_table(cmd_leakage_scan(require_result(f), grid).table, f.out);
    } else if (reopt->parsed()) {
      const StoredResult source = require_result(f);
      Flags opt_flags = f;
      opt_flags.mu.clear();
      opt_flags.gate.clear();
      const ExperimentConfig c = build_config(opt_flags, false, false);
      const Json doc = cmd_reoptimize_with_leakage(
          source, single_value(f.mu, "--mu"), c.optimizer, f.tf, f.nf);
      print_report_summary(doc);
      if (!f.out.empty()) {
        write_json_file(f.out, doc);
        std::cout << "wrote " << f.out << "\n";
      }
    } else if (scan_field->parsed()) {
      ExperimentConfig c = build_config(f, true, false);
      if (c.axes.fields.empty()) c.axes.fields = table_field_values();
      if (f.target_error.empty()) c.target_errors = {1e-2, 1e-3};
      emit_table(cmd_field_scan(c).table, f.out.empty() ? c.csv_output : f.out);
    } else if (dla->parsed()) {
      const ExperimentConfig c = build_config(f, false, false);
      const DlaReport r = cmd_dla(c.spec, f.controls);
      std::cout << to_json(r).dump(2) << "\n";
    }
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
