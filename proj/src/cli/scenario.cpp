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


#include <corrcat/cli/scenario.hpp>
#include <corrcat/serialize.hpp>

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace corrcat::cli {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

}  // namespace

const std::string& Scenario::get(const std::string& key) const {
  const auto it = values.find(key);
  if (it == values.end()) throw ParseError("scenario has no key '" + key + "'");
  return it->second;
}

double Scenario::get_real(const std::string& key) const {
  try {
    return parse_real(get(key));
  } catch (const ParseError&) {
    throw ParseError("key '" + key + "': expected a real number, got '" + get(key) + "'");
  }
}

std::size_t Scenario::get_count(const std::string& key) const {
  const std::string& v = get(key);
  std::size_t out = 0;
  auto [end, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || end != v.data() + v.size())
    throw ParseError("key '" + key + "': expected a non-negative integer, got '" + v + "'");
  return out;
}

std::uint64_t Scenario::get_seed(const std::string& key) const { return get_count(key); }

std::vector<double> Scenario::get_reals(const std::string& key) const {
  try {
    return parse_real_list(get(key));
  } catch (const ParseError& e) {
    throw ParseError("key '" + key + "': " + e.what());
  }
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find(',', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string item = trim(text.substr(pos, end - pos));
    if (item.empty()) throw ParseError("empty entry in list '" + std::string(text) + "'");
    out.push_back(parse_real(item));
    pos = end + 1;
  }
  return out;
}

Scenario parse_scenario(std::string_view text, std::filesystem::path base_dir) {
  Scenario s;
  s.base_dir = std::move(base_dir);
  std::istringstream in{std::string(text)};
  std::string line;
  for (std::size_t number = 1; std::getline(in, line); ++number) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string content = trim(line);
    if (content.empty()) continue;
    const auto eq = content.find('=');
    const std::string where = "line " + std::to_string(number) + ": ";
    if (eq == std::string::npos) throw ParseError(where + "expected 'key = value'");
    const std::string key = trim(std::string_view(content).substr(0, eq));
    const std::string value = trim(std::string_view(content).substr(eq + 1));
    if (key.empty() || key.find_first_not_of("abcdefghijklmnopqrstuvwxyz0123456789_") != std::string::npos)
      throw ParseError(where + "invalid key '" + key + "'");
    if (value.empty()) throw ParseError(where + "key '" + key + "' has no value");
    if (key == "command") {
      if (!s.command.empty()) throw ParseError(where + "duplicate key 'command'");
      s.command = value;
      continue;
    }
    if (!s.values.emplace(key, value).second) throw ParseError(where + "duplicate key '" + key + "'");
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read scenario file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return parse_scenario(buf.str(), path.parent_path());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void apply_key_specs(Scenario& s, const std::vector<KeySpec>& keys) {
  std::set<std::string> known;
  for (const auto& k : keys) known.insert(k.name);
  for (const auto& [key, value] : s.values)
    if (!known.count(key)) throw ParseError("unknown key '" + key + "' for command '" + s.command + "'");
  for (const auto& k : keys) {
    if (s.has(k.name)) continue;
    if (k.default_value.empty()) throw ParseError("command '" + s.command + "' requires key '" + k.name + "'");
    s.values[k.name] = k.default_value;
  }
}

}  // namespace corrcat::cli
