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

#include <doctest.h>

#include <filesystem>

using namespace corrcat;

TEST_CASE("reals round-trip exactly") {
  for (double x : {0.0, -0.0, 1.0 / 3.0, 1e-300, -2.5e17, 0.1})
    CHECK(parse_real(format_real(x)) == x);
  CHECK_THROWS_AS(parse_real("1.0x"), ParseError);
  CHECK_THROWS_AS(parse_real(""), ParseError);
}

TEST_CASE("state text format round-trips bit for bit") {
  const QState s = random_state(SystemLayout({{0, 2}, {1, 3}}), Ensemble::kGinibreMixed, 11);
  const std::string text = write_state(s);
  CHECK(text.rfind("corrcat-state 1\n", 0) == 0);
  const QState back = read_state(text);
  CHECK(back.layout() == s.layout());
  CHECK((back.matrix() - s.matrix()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(write_state(back) == text);
}

TEST_CASE("state reader accepts comments and rejects malformed input") {
  const std::string ok =
      "# a qubit\ncorrcat-state 1\nfactors 1\n0 2\nentries\n1 0\n0 0\n0 0\n0 0\n";
  CHECK(read_state(ok).matrix()(0, 0).real() == 1.0);
  CHECK_THROWS_AS(read_state("corrcat-state 2\n"), ParseError);
  CHECK_THROWS_AS(read_state("corrcat-state 1\nfactors 1\n0 2\nentries\n1 0\n"), ParseError);
  CHECK_THROWS_AS(read_state(ok + "0 0\n"), ParseError);
  CHECK_THROWS_AS(read_state("corrcat-state 1\nfactors 1\n0 2\nentries\n2 0\n0 0\n0 0\n0 0\n"), StateError);
  CHECK_THROWS_AS(read_state("corrcat-state 1\nfactors 1\n0 2\nentries\n1\n0 0\n0 0\n0 0\n"), ParseError);
}

TEST_CASE("protocol JSON round-trips to the same channel") {
  const LoccProtocol p = random_protocol(SystemLayout::bipartite(2, 2).repeat(2), 2, 4);
  LoccProtocol q = p;
  q.discard({3});
  q.prepare({1, 2}, Matrix::Identity(2, 2) / 2.0);
  const auto j = protocol_to_json(q);
  CHECK(j.at("format") == "corrcat-protocol");
  const LoccProtocol back = protocol_from_json(j);
  CHECK(back.input_layout() == q.input_layout());
  CHECK(back.output_layout() == q.output_layout());
  CHECK(choi_distance(flatten(back), flatten(q)) < 1e-12);
  CHECK(protocol_to_json(back) == j);
}

TEST_CASE("protocol reader rejects foreign documents") {
  CHECK_THROWS_AS(protocol_from_json(nlohmann::json{{"format", "other"}}), ParseError);
  auto j = protocol_to_json(LoccProtocol(SystemLayout::bipartite(2, 2)));
  j["steps"] = nlohmann::json::array({nlohmann::json{{"kind", "teleport"}}});
  CHECK_THROWS_AS(protocol_from_json(j), ParseError);
}

TEST_CASE("files") {
  const auto dir = std::filesystem::temp_directory_path();
  const QState s = random_state(SystemLayout::bipartite(2, 2), Ensemble::kHaarPure, 2);
  save_state(dir / "corrcat_test.state", s);
  CHECK(trace_norm_dist(load_state(dir / "corrcat_test.state"), s) == 0.0);
  const LoccProtocol p = random_protocol(SystemLayout::bipartite(2, 2), 1, 3);
  save_protocol(dir / "corrcat_test.json", p);
  CHECK(choi_distance(flatten(load_protocol(dir / "corrcat_test.json")), flatten(p)) < 1e-12);
  CHECK_THROWS_AS(load_state(dir / "does-not-exist.state"), ParseError);
}
