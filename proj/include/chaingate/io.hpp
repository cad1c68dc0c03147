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

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "chaingate/bandlimit.hpp"
#include "chaingate/dla.hpp"
#include "chaingate/hamiltonians.hpp"
#include "chaingate/optimize.hpp"
#include "chaingate/propagation.hpp"
#include "chaingate/targets.hpp"

namespace chaingate {

using Json = nlohmann::json;

inline constexpr int kResultSchemaVersion = 1;
inline constexpr const char* kToolkitVersion = "0.1.0";

// Exact decimal/hex-float text for doubles. Hex strings round-trip bit for
// bit through std::strtod.
std::string to_hex_float(double v);
double from_hex_float(const std::string& s);

Json to_json(const SpinChainSpec& spec);
SpinChainSpec spin_chain_from_json(const Json& j);

Json to_json(const TargetGate& gate);
TargetGate target_gate_from_json(const Json& j);

Json to_json(const OptimizerConfig& config);
// Missing keys keep their defaults.
OptimizerConfig optimizer_config_from_json(const Json& j);

Json to_json(const ControlSequence& seq);
ControlSequence control_sequence_from_json(const Json& j);

Json to_json(const OptimizationReport& report);
Json to_json(const DlaReport& report);

// Keys whose values legitimately differ between identical runs
// (timestamps, wall-clock timings) removed recursively.
Json strip_volatile(Json j);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

// Minimal CSV table; the header names units in brackets.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
  void write(std::ostream& os) const;
  void write_file(const std::string& path) const;
};

// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

}  // namespace chaingate
