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


#include <corrcat/cli/instances.hpp>
#include <corrcat/cli/plotdata.hpp>
#include <corrcat/cli/runner.hpp>
#include <corrcat/cli/scenario.hpp>
#include <corrcat/distill.hpp>

#include <doctest.h>

#include <sstream>

using namespace corrcat;
using namespace corrcat::cli;

TEST_CASE("scenario parsing") {
  const Scenario s = parse_scenario("# header\ncommand = distill\n\nf_initial = 0.8   # trailing\n  f_target=0.95\n");
  CHECK(s.command == "distill");
  CHECK(s.get_real("f_initial") == 0.8);
  CHECK(s.get("f_target") == "0.95");
  CHECK(!s.has("samples"));
  CHECK_THROWS_AS(s.get("samples"), ParseError);

  CHECK_THROWS_AS(parse_scenario("command = distill\nno separator here\n"), ParseError);
  CHECK_THROWS_AS(parse_scenario("command = distill\nf_initial = 0.8\nf_initial = 0.7\n"), ParseError);
  CHECK_THROWS_AS(parse_scenario("command = distill\n = 0.8\n"), ParseError);
  CHECK_THROWS_AS(parse_scenario("command = a\ncommand = b\n"), ParseError);
  CHECK_THROWS_AS(load_scenario("/nonexistent/path.scn"), std::exception);
}

TEST_CASE("typed scenario values") {
  const Scenario s = parse_scenario("command = x\na = 3\nb = -1\nc = 0.5,0.25, 0.25\nd = abc\ne = 1e400\n");
  CHECK(s.get_count("a") == 3);
  CHECK_THROWS_AS(s.get_count("b"), ParseError);
  CHECK_THROWS_AS(s.get_real("d"), ParseError);
  CHECK_THROWS_AS(s.get_real("e"), ParseError);
  CHECK(s.get_reals("c") == std::vector<double>{0.5, 0.25, 0.25});
  CHECK(s.get_seed("a") == 3);
  CHECK(parse_real_list(" 1 , 2 ") == std::vector<double>{1, 2});
  CHECK_THROWS_AS(parse_real_list("1,,2"), ParseError);
}

TEST_CASE("key specs") {
  for (const auto& name : command_names()) {
    CAPTURE(name);
    const auto& keys = command_keys(name);
    CHECK(!keys.empty());
    bool has_seed = false;
    for (const auto& k : keys) has_seed |= k.name == "seed";
    CHECK(has_seed);
  }
  CHECK_THROWS_AS(command_keys("nope"), ParseError);

  Scenario s = parse_scenario("command = distill\nfidelity = 0.9\n");
  CHECK_THROWS_AS(apply_key_specs(s, command_keys("distill")), ParseError);
  Scenario d = parse_scenario("command = distill\n");
  apply_key_specs(d, command_keys("distill"));
  CHECK(d.get_real("f_initial") == 0.8);
  Scenario c = parse_scenario("command = x\n");
  CHECK_THROWS_AS(apply_key_specs(c, {{"needed", "", "no default"}}), ParseError);
  CHECK_THROWS_AS(run_scenario(parse_scenario("command = frobnicate\n")), ParseError);
  CHECK_THROWS_AS(run_scenario(parse_scenario("f_initial = 0.8\n")), ParseError);
}

TEST_CASE("state specs") {
  CHECK(trace_norm_dist(make_state("werner:0.9", "."), werner_state(0.9)) < 1e-15);
  CHECK(make_state("schmidt:0.75,0.25", ".").is_pure());
  CHECK(make_state("haar:3", ".").is_pure());
  CHECK(!make_state("ginibre:3:2", ".").is_pure());
  CHECK(trace_norm_dist(make_state("haar:3", "."), make_state("haar:3", ".")) == 0.0);
  CHECK_THROWS_AS(make_state("werner:0.1", "."), std::exception);
  CHECK_THROWS_AS(make_state("bogus", "."), ParseError);
  CHECK_THROWS_AS(make_state("separable:1:9", "."), std::invalid_argument);
  const auto f = separable_state(5, 3);
  CHECK(trace_norm_dist(marginal_range(f.extension, 0, 2), f.state) < 1e-12);
  CHECK(f.extension.layout()[2].party == 2);
}

TEST_CASE("reports are deterministic and complete") {
  const Scenario s = load_scenario(std::string(CORRCAT_TEST_DATA) + "/lemma1_small.scn");
  const auto a = run_scenario(s);
  const auto b = run_scenario(s);
  CHECK(render_report(a.report) == render_report(b.report));
  CHECK(a.pass);
  CHECK(a.report.at("command") == "verify-lemma1");
  CHECK(a.report.at("seed") == 17);
  CHECK(a.report.at("tool").at("name") == "corrcat");
  for (const auto& c : a.report.at("checks")) CHECK(c.at("pass").get<bool>());

  const auto other = run_scenario(s, Overrides{18, std::nullopt});
  CHECK(render_report(other.report) != render_report(a.report));
  const auto fewer = run_scenario(s, Overrides{std::nullopt, 100});
  CHECK(fewer.report.at("series").at("decoupling").at("rows").size() == 100);
}

TEST_CASE("catalyze scenario") {
  const auto r = run_scenario(load_scenario(std::string(CORRCAT_TEST_DATA) + "/catalyze_identity.scn"));
  CHECK(r.pass);
  CHECK(r.report.at("results").at("certificate").at("epsilon_achieved").get<double>() < 1e-12);
}

TEST_CASE("plot data") {
  const auto r = run_scenario(load_scenario(std::string(CORRCAT_TEST_DATA) + "/distill.scn"));
  CHECK(series_names(r.report) == std::vector<std::string>{"distill"});
  const std::string csv = emit_plotdata(r.report, "distill");
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "F_in,F_out,p,expected_copies");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 20);
  CHECK_THROWS_AS(emit_plotdata(r.report, "synth"), ParseError);
  CHECK_THROWS_AS(emit_plotdata(nlohmann::json::object(), "distill"), ParseError);
}

TEST_CASE("instance generators") {
  const auto inst = catalysis_instances();
  CHECK(inst.size() >= 5);
  for (const auto& i : inst) {
    CAPTURE(i.name);
    CHECK(i.m <= i.n);
    CHECK(i.lambda.input_layout() == i.rho.layout().repeat(i.n));
  }
  const auto a = superadd_instances(4, 9, 0.3);
  const auto b = superadd_instances(4, 9, 0.3);
  REQUIRE(a.size() == 4);
  for (std::size_t k = 0; k < 4; ++k) CHECK(trace_norm_dist(a[k].mu12, b[k].mu12) == 0.0);
}
