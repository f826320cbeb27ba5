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

#include <corrcat/errors.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace corrcat::cli {

/// Scenario document: `key = value` lines, `#` comments, blank lines ignored.
/// Relative file references resolve against `base_dir`.
struct Scenario {
  std::string command;
  std::map<std::string, std::string> values;
  std::filesystem::path base_dir;

  bool has(const std::string& key) const { return values.count(key) != 0; }
  const std::string& get(const std::string& key) const;
  double get_real(const std::string& key) const;
  std::size_t get_count(const std::string& key) const;
  std::uint64_t get_seed(const std::string& key) const;
  std::vector<double> get_reals(const std::string& key) const;
};

Scenario parse_scenario(std::string_view text, std::filesystem::path base_dir = {});
Scenario load_scenario(const std::filesystem::path& path);

struct KeySpec {
  std::string name;
  std::string default_value;  ///< empty: required
  std::string help;
};

/// Rejects keys outside `keys`, fills defaults, rejects missing required keys.
void apply_key_specs(Scenario& s, const std::vector<KeySpec>& keys);

std::vector<double> parse_real_list(std::string_view text);

}  // namespace corrcat::cli
