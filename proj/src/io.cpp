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

#include "chaingate/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace chaingate {
namespace {

template <typename T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return j.at(key).get<T>();
}

std::string coupling_name(CouplingKind k) {
  switch (k) {
    case CouplingKind::kXXX:
      return "XXX";
    case CouplingKind::kXXZ:
      return "XXZ";
    case CouplingKind::kXYZ:
      return "XYZ";
  }
  return "XXX";
}

std::string gate_name(GateKind k) {
  switch (k) {
    case GateKind::kToffoli:
      return "toffoli";
    case GateKind::kFredkin:
      return "fredkin";
    case GateKind::kCnot:
      return "cnot";
    case GateKind::kESwap:
      return "eswap";
    case GateKind::kCustom:
      return "custom";
  }
  return "custom";
}

}  // namespace

std::string to_hex_float(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%a", v);
  return buf;
}

double from_hex_float(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') {
    throw ValidationError("malformed floating-point text '" + s + "'");
  }
  return v;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Json to_json(const SpinChainSpec& spec) {
  Json j;
  j["n_qubits"] = spec.n_qubits;
  j["coupling"] = {{"kind", coupling_name(spec.coupling.kind)},
                   {"jx", spec.coupling.jx},
                   {"jy", spec.coupling.jy},
                   {"jz", spec.coupling.jz}};
  j["global_field"] = spec.global_field;
  j["leakage"] = spec.leakage ? Json(*spec.leakage) : Json("none");
  j["actuator"] = spec.actuator;
  return j;
}

SpinChainSpec spin_chain_from_json(const Json& j) {
  SpinChainSpec spec;
  spec.n_qubits = get_or(j, "n_qubits", spec.n_qubits);
  if (j.contains("coupling")) {
    const Json& c = j.at("coupling");
    const std::string kind = get_or<std::string>(c, "kind", "XXX");
    if (kind == "XXX") {
      spec.coupling = Coupling::xxx();
    } else if (kind == "XXZ") {
      spec.coupling = Coupling::xxz(
          c.contains("delta") ? c.at("delta").get<double>()
                              : get_or(c, "jz", 1.0));
    } else if (kind == "XYZ") {
      spec.coupling = Coupling::xyz(get_or(c, "jx", 1.0), get_or(c, "jy", 1.0),
                                    get_or(c, "jz", 1.0));
    } else {
      throw ValidationError("spec.coupling.kind: unknown coupling '" + kind +
                            "'");
    }
  }
  spec.global_field = get_or(j, "global_field", 0.0);
  if (j.contains("leakage") && !j.at("leakage").is_null()) {
    const Json& l = j.at("leakage");
    if (l.is_string()) {
      if (l.get<std::string>() != "none") {
        throw ValidationError("spec.leakage: expected a number or \"none\"");
      }
    } else {
      spec.leakage = l.get<double>();
    }
  }
  spec.actuator = get_or(j, "actuator", 1);
  spec.validate();
  return spec;
}

Json to_json(const TargetGate& gate) {
  Json j;
  j["kind"] = gate_name(gate.kind);
  j["n_qubits"] = gate.n_qubits;
  switch (gate.kind) {
    case GateKind::kCnot:
      j["control"] = gate.qubit_a;
      j["target"] = gate.qubit_b;
      break;
    case GateKind::kESwap:
      j["theta"] = gate.theta;
      j["qubits"] = {gate.qubit_a, gate.qubit_b};
      break;
    case GateKind::kCustom: {
      Json rows = Json::array();
      for (Eigen::Index r = 0; r < gate.custom.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < gate.custom.cols(); ++c) {
          row.push_back({gate.custom(r, c).real(), gate.custom(r, c).imag()});
        }
        rows.push_back(row);
      }
      j["matrix"] = rows;
      break;
    }
    default:
      break;
  }
  return j;
}

TargetGate target_gate_from_json(const Json& j) {
  const std::string kind = get_or<std::string>(j, "kind", "toffoli");
  const int n = get_or(j, "n_qubits", 3);
  TargetGate g;
  if (kind == "toffoli") {
    g = TargetGate::toffoli(n);
  } else if (kind == "fredkin") {
    g = TargetGate::fredkin(n);
  } else if (kind == "cnot") {
    g = TargetGate::cnot(get_or(j, "control", 2), get_or(j, "target", 3), n);
  } else if (kind == "eswap") {
    int a = 1, b = 2;
    if (j.contains("qubits")) {
      a = j.at("qubits").at(0).get<int>();
      b = j.at("qubits").at(1).get<int>();
    }
    g = TargetGate::eswap(get_or(j, "theta", 0.0), a, b,
                          get_or(j, "n_qubits", 2));
  } else if (kind == "custom") {
    const Json& rows = j.at("matrix");
    const auto dim = static_cast<Eigen::Index>(rows.size());
    Matrix m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
      if (static_cast<Eigen::Index>(rows.at(r).size()) != dim) {
        throw ValidationError("gate.matrix must be square");
      }
      for (Eigen::Index c = 0; c < dim; ++c) {
        const Json& e = rows.at(r).at(c);
        m(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
      }
    }
    g = TargetGate::from_matrix(std::move(m));
  } else {
    throw ValidationError("gate.kind: unknown gate '" + kind + "'");
  }
  gate_matrix(g);  // validates indices and unitarity
  return g;
}

Json to_json(const OptimizerConfig& c) {
  Json j;
  j["n_starts"] = c.n_starts;
  j["n_select"] = c.n_select;
  j["amplitude_box"] = c.amplitude_box;
  j["sample_box"] = c.sample_box ? Json(*c.sample_box) : Json(nullptr);
  j["gradient_mode"] =
      c.gradient_mode == GradientMode::kAnalytic ? "analytic"
                                                 : "finite_difference";
  j["fd_step"] = c.fd_step;
  j["convergence_tol"] = c.convergence_tol;
  j["gradient_tol"] = c.gradient_tol;
  j["max_iters"] = c.max_iters;
  j["rng_seed"] = c.rng_seed;
  j["stop_fidelity"] =
      c.stop_fidelity ? Json(*c.stop_fidelity) : Json(nullptr);
  return j;
}

OptimizerConfig optimizer_config_from_json(const Json& j) {
  OptimizerConfig c;
  c.n_starts = get_or(j, "n_starts", c.n_starts);
  c.n_select = get_or(j, "n_select", c.n_select);
  c.amplitude_box = get_or(j, "amplitude_box", c.amplitude_box);
  if (j.contains("sample_box") && !j.at("sample_box").is_null()) {
    c.sample_box = j.at("sample_box").get<double>();
  }
  const std::string mode = get_or<std::string>(j, "gradient_mode", "analytic");
  if (mode == "analytic") {
    c.gradient_mode = GradientMode::kAnalytic;
  } else if (mode == "finite_difference") {
    c.gradient_mode = GradientMode::kFiniteDifference;
  } else {
    throw ValidationError("optimizer.gradient_mode: unknown mode '" + mode +
                          "'");
  }
  c.fd_step = get_or(j, "fd_step", c.fd_step);
  c.convergence_tol = get_or(j, "convergence_tol", c.convergence_tol);
  c.gradient_tol = get_or(j, "gradient_tol", c.gradient_tol);
  c.max_iters = get_or(j, "max_iters", c.max_iters);
  c.rng_seed = get_or<std::uint64_t>(j, "rng_seed", c.rng_seed);
  if (j.contains("stop_fidelity") && !j.at("stop_fidelity").is_null()) {
    c.stop_fidelity = j.at("stop_fidelity").get<double>();
  }
  c.threads = get_or(j, "threads", c.threads);
  c.validate();
  return c;
}

Json to_json(const ControlSequence& seq) {
  Json j;
  j["n_pulses"] = seq.n_pulses();
  j["slice_duration"] = seq.slice_duration();
  j["slice_duration_hex"] = to_hex_float(seq.slice_duration());
  j["total_time"] = seq.total_time();
  Json amps = Json::array();
  Json hex = Json::array();
  for (double h : seq.amplitudes()) {
    amps.push_back(h);
    hex.push_back(to_hex_float(h));
  }
  j["amplitudes"] = amps;
  j["amplitudes_hex"] = hex;
  return j;
}

ControlSequence control_sequence_from_json(const Json& j) {
  std::vector<double> amps;
  double slice = 0.0;
  if (j.contains("amplitudes_hex")) {
    for (const Json& e : j.at("amplitudes_hex")) {
      amps.push_back(from_hex_float(e.get<std::string>()));
    }
  } else {
    amps = j.at("amplitudes").get<std::vector<double>>();
  }
  if (j.contains("slice_duration_hex")) {
    slice = from_hex_float(j.at("slice_duration_hex").get<std::string>());
  } else {
    slice = j.at("slice_duration").get<double>();
  }
  return ControlSequence(std::move(amps), slice);
}

Json to_json(const OptimizationReport& r) {
  Json j;
  j["best_sequence"] = to_json(r.best_sequence);
  j["best_fidelity"] = r.best_fidelity;
  j["best_fidelity_hex"] = to_hex_float(r.best_fidelity);
  j["gate_error"] = r.gate_error();
  j["status"] = to_string(r.best_status);
  j["n_starts"] = r.n_starts;
  j["distinct_optima"] = r.distinct_optima;
  j["rng_seed"] = r.rng_seed;
  Json searches = Json::array();
  for (const LocalSearchSummary& s : r.local_searches) {
    searches.push_back({{"start_index", s.start_index},
                        {"initial_fidelity", s.initial_fidelity},
                        {"final_fidelity", s.final_fidelity},
                        {"iterations", s.iterations},
                        {"status", to_string(s.status)}});
  }
  j["local_searches"] = searches;
  j["timing"] = {{"wall_seconds", r.wall_seconds}};
  return j;
}

Json to_json(const DlaReport& r) {
  return {{"dim", r.dim},
          {"generators", r.generator_labels},
          {"dimension", r.dimension},
          {"expected_dimension", r.expected_dimension},
          {"closure_sweeps", r.closure_sweeps},
          {"orthonormality_residual", r.orthonormality_residual},
          {"verdict", r.full_rank() ? "PASS" : "SUBSPACE"}};
}

Json strip_volatile(Json j) {
  if (j.is_object()) {
    for (const char* key : {"timing", "created_utc"}) j.erase(key);
    for (auto& [key, value] : j.items()) value = strip_volatile(value);
  } else if (j.is_array()) {
    for (auto& value : j) value = strip_volatile(value);
  }
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ValidationError("corrupt JSON in '" + path + "': " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

void CsvTable::add_row(std::vector<std::string> row) {
  if (row.size() != header.size()) {
    throw ValidationError("CSV row width does not match the header");
  }
  rows.push_back(std::move(row));
}

void CsvTable::write(std::ostream& os) const {
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      os << cells[i];
    }
    os << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

void CsvTable::write_file(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  write(out);
}

}  // namespace chaingate
