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

// Text formats for states and protocols.
//
// State file (line oriented, '#' starts a comment line):
//
//   corrcat-state 1
//   factors <count>
//   <party> <dim>              (one line per factor, layout order)
//   entries
//   <re> <im>                  (total_dim² lines, row-major)
//
// Reals are written in shortest round-trip decimal form, so write/read is
// bit-exact.
//
// Protocol file: a JSON document
//
//   {"format": "corrcat-protocol", "version": 1,
//    "input": [[party, dim], ...],
//    "steps": [ {"kind": "local", "party": p, "targets": [...],
//                "outcomes": [{"label": s, "kraus": [matrix, ...]}, ...],
//                "branches": [protocol-body, ...]},
//               {"kind": "nested", "targets": [...], "body": protocol-body},
//               {"kind": "discard", "targets": [...]},
//               {"kind": "prepare", "party": p, "dim": d, "state": matrix} ]}
//
// where protocol-body is {"input": ..., "steps": ...} and a matrix is
// {"rows": r, "cols": c, "entries": ["<re> <im>", ...]} using the same
// row-major entry encoding as the state file.

#include <corrcat/locc.hpp>
#include <corrcat/qstate.hpp>

#include <json.hpp>

#include <filesystem>
#include <string>
#include <string_view>

namespace corrcat {

std::string format_real(double x);
double parse_real(std::string_view text);

std::string write_state(const QState& s);
QState read_state(std::string_view text);
void save_state(const std::filesystem::path& path, const QState& s);
QState load_state(const std::filesystem::path& path);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);
nlohmann::json layout_to_json(const SystemLayout& layout);
SystemLayout layout_from_json(const nlohmann::json& j);

nlohmann::json protocol_to_json(const LoccProtocol& p);
LoccProtocol protocol_from_json(const nlohmann::json& j);
void save_protocol(const std::filesystem::path& path, const LoccProtocol& p);
LoccProtocol load_protocol(const std::filesystem::path& path);

}  // namespace corrcat
