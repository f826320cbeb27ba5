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

#include <corrcat/serialize.hpp>

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace corrcat {

using nlohmann::json;

std::string format_real(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc{}) throw ParseError("cannot format real");
  return std::string(buf, end);
}

double parse_real(std::string_view text) {
  double x = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), x);
  if (ec != std::errc{} || end != text.data() + text.size())
    throw ParseError("malformed real '" + std::string(text) + "'");
  return x;
}

namespace {

std::string format_entry(const Complex& z) { return format_real(z.real()) + " " + format_real(z.imag()); }

Complex parse_entry(std::string_view text) {
  const auto space = text.find(' ');
  if (space == std::string_view::npos) throw ParseError("entry '" + std::string(text) + "' needs '<re> <im>'");
  return {parse_real(text.substr(0, space)), parse_real(text.substr(space + 1))};
}

// Non-empty, non-comment lines with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string>> content_lines(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string>> out;
  std::size_t number = 0, pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(pos, end - pos));
    ++number;
    pos = end + 1;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') {
      if (end == text.size()) break;
      continue;
    }
    out.emplace_back(number, line.substr(first));
    if (end == text.size()) break;
  }
  return out;
}

std::size_t parse_count(std::string_view text, std::size_t line) {
  std::size_t v = 0;
  auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size())
    throw ParseError("line " + std::to_string(line) + ": expected a non-negative integer, got '" + std::string(text) + "'");
  return v;
}

}  // namespace

std::string write_state(const QState& s) {
  std::ostringstream os;
  os << "corrcat-state 1\n";
  os << "factors " << s.layout().size() << '\n';
  for (const auto& f : s.layout().factors()) os << f.party << ' ' << f.dim << '\n';
  os << "entries\n";
  const Matrix& m = s.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) os << format_entry(m(i, j)) << '\n';
  return os.str();
}

QState read_state(std::string_view text) {
  const auto lines = content_lines(text);
  std::size_t at = 0;
  auto next = [&](const char* what) -> const std::pair<std::size_t, std::string>& {
    if (at >= lines.size()) throw ParseError(std::string("unexpected end of state file, expected ") + what);
    return lines[at++];
  };
  if (next("header").second != "corrcat-state 1") throw ParseError("line 1: expected header 'corrcat-state 1'");
  const auto& fl = next("factor count");
  if (fl.second.rfind("factors ", 0) != 0) throw ParseError("line " + std::to_string(fl.first) + ": expected 'factors N'");
  const std::size_t count = parse_count(std::string_view(fl.second).substr(8), fl.first);
  std::vector<Factor> factors;
  for (std::size_t i = 0; i < count; ++i) {
    const auto& [ln, line] = next("factor");
    const auto space = line.find(' ');
    if (space == std::string::npos) throw ParseError("line " + std::to_string(ln) + ": expected '<party> <dim>'");
    const auto party = parse_count(std::string_view(line).substr(0, space), ln);
    const auto dim = parse_count(std::string_view(line).substr(space + 1), ln);
    factors.push_back({static_cast<int>(party), dim});
  }
  SystemLayout layout(std::move(factors));
  if (layout.total_dim() > kMaxTotalDim) throw DimensionCapError("state file exceeds dimension cap");
  const auto& el = next("'entries'");
  if (el.second != "entries") throw ParseError("line " + std::to_string(el.first) + ": expected 'entries'");
  const auto d = static_cast<Eigen::Index>(layout.total_dim());
  Matrix m(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) {
      const auto& [ln, line] = next("matrix entry");
      try {
        m(i, j) = parse_entry(line);
      } catch (const ParseError& e) {
        throw ParseError("line " + std::to_string(ln) + ": " + e.what());
      }
    }
  if (at != lines.size()) throw ParseError("line " + std::to_string(lines[at].first) + ": trailing content");
  return QState(std::move(layout), std::move(m));
}

void save_state(const std::filesystem::path& path, const QState& s) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path.string());
  out << write_state(s);
}

QState load_state(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read state file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return read_state(buf.str());
}

json matrix_to_json(const Matrix& m) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) entries.push_back(format_entry(m(i, j)));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const json& j) {
  try {
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    const auto& entries = j.at("entries");
    if (rows < 0 || cols < 0 || static_cast<Eigen::Index>(entries.size()) != rows * cols)
      throw ParseError("matrix entry count does not match its shape");
    Matrix m(rows, cols);
    std::size_t k = 0;
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = parse_entry(entries[k++].get<std::string>());
    return m;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed matrix: ") + e.what());
  }
}

json layout_to_json(const SystemLayout& layout) {
  json out = json::array();
  for (const auto& f : layout.factors()) out.push_back(json::array({f.party, f.dim}));
  return out;
}

SystemLayout layout_from_json(const json& j) {
  try {
    std::vector<Factor> factors;
    for (const auto& f : j) factors.push_back({f.at(0).get<int>(), f.at(1).get<std::size_t>()});
    return SystemLayout(std::move(factors));
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed layout: ") + e.what());
  }
}

namespace {

json body_to_json(const LoccProtocol& p) {
  json steps = json::array();
  for (const auto& step : p.steps()) {
    if (const auto* l = std::get_if<LocalStep>(&step)) {
      json outcomes = json::array();
      for (const auto& o : l->instrument.outcomes()) {
        json ops = json::array();
        for (const auto& k : o.kraus) ops.push_back(matrix_to_json(k));
        outcomes.push_back({{"label", o.label}, {"kraus", std::move(ops)}});
      }
      json branches = json::array();
      for (const auto& b : l->branches) branches.push_back(body_to_json(b));
      steps.push_back({{"kind", "local"},
                       {"party", l->party},
                       {"targets", l->targets},
                       {"outcomes", std::move(outcomes)},
                       {"branches", std::move(branches)}});
    } else if (const auto* n = std::get_if<NestedStep>(&step)) {
      steps.push_back({{"kind", "nested"}, {"targets", n->targets}, {"body", body_to_json(n->body.front())}});
    } else if (const auto* d = std::get_if<DiscardStep>(&step)) {
      steps.push_back({{"kind", "discard"}, {"targets", d->targets}});
    } else if (const auto* pr = std::get_if<PrepareStep>(&step)) {
      steps.push_back({{"kind", "prepare"},
                       {"party", pr->factor.party},
                       {"dim", pr->factor.dim},
                       {"state", matrix_to_json(pr->state)}});
    }
  }
  return json{{"input", layout_to_json(p.input_layout())}, {"steps", std::move(steps)}};
}

LoccProtocol body_from_json(const json& j) {
  LoccProtocol p(layout_from_json(j.at("input")));
  for (const auto& s : j.at("steps")) {
    const auto kind = s.at("kind").get<std::string>();
    if (kind == "local") {
      std::vector<Outcome> outcomes;
      for (const auto& o : s.at("outcomes")) {
        Outcome out{o.at("label").get<std::string>(), {}};
        for (const auto& k : o.at("kraus")) out.kraus.push_back(matrix_from_json(k));
        outcomes.push_back(std::move(out));
      }
      std::vector<LoccProtocol> branches;
      for (const auto& b : s.value("branches", json::array())) branches.push_back(body_from_json(b));
      p.local(s.at("party").get<int>(), s.at("targets").get<std::vector<std::size_t>>(), Instrument(std::move(outcomes)),
              std::move(branches));
    } else if (kind == "nested") {
      p.nested(s.at("targets").get<std::vector<std::size_t>>(), body_from_json(s.at("body")));
    } else if (kind == "discard") {
      p.discard(s.at("targets").get<std::vector<std::size_t>>());
    } else if (kind == "prepare") {
      p.prepare({s.at("party").get<int>(), s.at("dim").get<std::size_t>()}, matrix_from_json(s.at("state")));
    } else {
      throw ParseError("unknown protocol step kind '" + kind + "'");
    }
  }
  return p;
}

}  // namespace

json protocol_to_json(const LoccProtocol& p) {
  json out = body_to_json(p);
  out["format"] = "corrcat-protocol";
  out["version"] = 1;
  return out;
}

LoccProtocol protocol_from_json(const json& j) {
  try {
    if (j.value("format", std::string{}) != "corrcat-protocol" || j.value("version", 0) != 1)
      throw ParseError("not a corrcat-protocol version 1 document");
    return body_from_json(j);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed protocol: ") + e.what());
  }
}

void save_protocol(const std::filesystem::path& path, const LoccProtocol& p) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path.string());
  out << protocol_to_json(p).dump(1) << '\n';
}

LoccProtocol load_protocol(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read protocol file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("protocol file " + path.string() + ": " + e.what());
  }
  return protocol_from_json(j);
}

}  // namespace corrcat
