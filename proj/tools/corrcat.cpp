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


// corrcat: scenario runner for the catalysis verifiers.
//
//   corrcat <command> [--scenario PATH] [--seed N] [--samples N] [--out PATH]
//   corrcat run --scenario PATH
//   corrcat plot --report PATH --series NAME [--out PATH]
//   corrcat keys <command>
//
// Exit status: 0 all checks pass, 1 a check failed, 2 usage or parse error,
// 3 any other error.

#include <corrcat/cli/plotdata.hpp>
#include <corrcat/cli/runner.hpp>
#include <corrcat/errors.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace corrcat;
using namespace corrcat::cli;

struct Flags {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples;
  std::string out;
};

void add_run_flags(CLI::App* app, Flags& f) {
  app->add_option("--scenario", f.scenario, "scenario file")->envname("CORRCAT_SCENARIO");
  app->add_option("--seed", f.seed, "seed override")->envname("CORRCAT_SEED");
  app->add_option("--samples", f.samples, "sample-count override")->envname("CORRCAT_SAMPLES");
  app->add_option("--out", f.out, "report path (default: stdout)")->envname("CORRCAT_OUT");
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path);
  out << text;
}

int execute(const std::string& command, const Flags& f) {
  Scenario s;
  if (!f.scenario.empty()) s = load_scenario(f.scenario);
  if (command != "run") {
    if (!s.command.empty() && s.command != command)
      throw ParseError("scenario is for '" + s.command + "', not '" + command + "'");
    s.command = command;
  } else if (f.scenario.empty()) {
    throw ParseError("run needs --scenario");
  }
  const RunResult r = run_scenario(std::move(s), {f.seed, f.samples});
  write_output(f.out, render_report(r.report));
  for (const auto& c : r.report.at("checks"))
    if (!c.at("pass").get<bool>()) std::cerr << "corrcat: check failed: " << c.at("name").get<std::string>() << '\n';
  return r.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"corrcat: correlated catalysis verifiers"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("corrcat ") + kVersion);

  Flags flags;
  std::string selected;
  for (const auto& name : command_names()) {
    auto* sub = app.add_subcommand(name, "run the " + name + " verifier");
    add_run_flags(sub, flags);
    sub->callback([&selected, name] { selected = name; });
  }
  auto* run = app.add_subcommand("run", "run the command named in a scenario file");
  add_run_flags(run, flags);
  run->callback([&selected] { selected = "run"; });

  std::string report_path, series, plot_out;
  auto* plot = app.add_subcommand("plot", "export a report series as CSV");
  plot->add_option("--report", report_path, "report JSON")->required();
  plot->add_option("--series", series, "series name")->required();
  plot->add_option("--out", plot_out, "CSV path (default: stdout)");
  plot->callback([&selected] { selected = "plot"; });

  std::string keys_for;
  auto* keys = app.add_subcommand("keys", "list scenario keys of a command");
  keys->add_option("command", keys_for, "command name")->required();
  keys->callback([&selected] { selected = "keys"; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (selected == "plot") {
      std::ifstream in(report_path);
      if (!in) throw ParseError("cannot read report " + report_path);
      nlohmann::json report;
      try {
        report = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(report_path + ": " + e.what());
      }
      write_output(plot_out, emit_plotdata(report, series));
      return 0;
    }
    if (selected == "keys") {
      for (const auto& k : command_keys(keys_for)) std::cout << k.name << " = " << k.default_value << "  # " << k.help << '\n';
      return 0;
    }
    return execute(selected, flags);
  } catch (const ParseError& e) {
    std::cerr << "corrcat: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "corrcat: error: " << e.what() << '\n';
    return 3;
  }
}
