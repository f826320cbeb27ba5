// Copyright 2026 The corrcat Authors
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

#include <corrcat/cli/scenario.hpp>

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace corrcat::cli {

inline constexpr const char* kVersion = "0.1.0";

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
};

struct RunResult {
  nlohmann::json report;
  bool pass = false;
};

const std::vector<std::string>& command_names();
/// Keys accepted by `command`, with defaults; throws ParseError if unknown.
const std::vector<KeySpec>& command_keys(const std::string& command);

RunResult run_scenario(Scenario scenario, const Overrides& overrides = {});

/// Pretty JSON with sorted keys and a trailing newline; rejects non-finite numbers.
std::string render_report(const nlohmann::json& report);

}  // namespace corrcat::cli
