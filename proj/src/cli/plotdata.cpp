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


#include <corrcat/cli/plotdata.hpp>
#include <corrcat/errors.hpp>
#include <corrcat/serialize.hpp>

#include <sstream>

namespace corrcat::cli {

using nlohmann::json;

std::vector<std::string> series_names(const json& report) {
  std::vector<std::string> out;
  if (!report.is_object() || !report.contains("series")) return out;
  for (const auto& [name, _] : report.at("series").items()) out.push_back(name);
  return out;
}

std::string emit_plotdata(const json& report, const std::string& kind) {
  if (!report.is_object() || report.empty()) throw ParseError("empty report");
  if (!report.contains("series") || !report.at("series").contains(kind))
    throw ParseError("report has no series '" + kind + "'");
  const json& series = report.at("series").at(kind);
  const auto& columns = series.at("columns");
  std::ostringstream os;
  for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << columns[c].get<std::string>();
  os << '\n';
  for (const auto& row : series.at("rows")) {
    if (row.size() != columns.size()) throw ParseError("series '" + kind + "' has a ragged row");
    for (std::size_t c = 0; c < row.size(); ++c) {
      os << (c ? "," : "");
      if (row[c].is_number_float()) os << format_real(row[c].get<double>());
      else os << row[c].dump();
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace corrcat::cli
