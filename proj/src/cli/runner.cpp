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


#include <corrcat/catfactory.hpp>
#include <corrcat/cli/instances.hpp>
#include <corrcat/cli/runner.hpp>
#include <corrcat/distill.hpp>
#include <corrcat/measures.hpp>
#include <corrcat/purecat.hpp>
#include <corrcat/serialize.hpp>

#include <cmath>
#include <functional>
#include <limits>
#include <map>

namespace corrcat::cli {

using nlohmann::json;

namespace {

class Report {
 public:
  void check(const std::string& name, bool pass, double value, double limit) {
    checks_.push_back({{"name", name}, {"pass", pass}, {"value", value}, {"limit", limit}});
    pass_ = pass_ && pass;
  }
  json& results() { return results_; }
  void series(const std::string& name, std::vector<std::string> columns, json rows) {
    series_[name] = {{"columns", std::move(columns)}, {"rows", std::move(rows)}};
  }
  bool pass() const { return pass_; }

  json finish(const Scenario& s) const {
    json scenario = json::object();
    for (const auto& [k, v] : s.values) scenario[k] = v;
    json out = {{"tool", {{"name", "corrcat"}, {"version", kVersion}}},
                {"command", s.command},
                {"scenario", std::move(scenario)},
                {"seed", s.get_seed("seed")},
                {"checks", checks_},
                {"pass", pass_},
                {"results", results_}};
    if (!series_.empty()) out["series"] = series_;
    return out;
  }

 private:
  json checks_ = json::array();
  json results_ = json::object();
  json series_ = json::object();
  bool pass_ = true;
};

json certificate_json(const CatalysisCertificate& c) {
  return {{"epsilon_achieved", c.epsilon_achieved}, {"catalyst_drift", c.catalyst_drift}, {"correlation", c.correlation}};
}

json reduction_json(const ReductionCertificate& c) {
  return {{"n", c.n}, {"m", c.m}, {"per_marginal_errors", c.per_marginal_errors}, {"rate_slack", c.rate_slack}};
}

std::size_t good_copies(const Scenario& s, std::size_t n) {
  const std::size_t good = s.get_count("good");
  if (good > n) throw ParseError("key 'good' exceeds n");
  return good == 0 ? n : good;
}

// Shared setup for catalyze and reduce.
struct Assembly {
  QState rho, sigma;
  LoccProtocol lambda;
  std::size_t n = 0, good = 0;
  CatalystAssembly cat;
};

Assembly assemble(const Scenario& s) {
  Assembly a;
  a.n = s.get_count("n");
  a.good = good_copies(s, a.n);
  a.rho = make_state(s.get("rho"), s.base_dir);
  a.sigma = make_state(s.get("target"), s.base_dir);
  a.lambda = make_protocol(s.get("protocol"), a.rho, a.n, a.good, s.base_dir);
  a.cat = build_catalyst(a.lambda, a.rho, a.n);
  return a;
}

void run_catalyze(const Scenario& s, Report& r) {
  const Assembly a = assemble(s);
  const auto& copy = a.rho.layout();
  const QState& sigma = a.sigma;
  if (!(sigma.layout() == copy)) throw LayoutError("catalyze: target layout must match rho");

  const auto cert = verify_catalysis(a.cat.embedding, a.cat.tau, a.rho, sigma);
  double eps = 0;
  std::vector<double> marginal_errors;
  for (std::size_t k = 1; k <= a.n; ++k) {
    marginal_errors.push_back(trace_norm_dist(gamma_marginal(a.cat.gamma, copy, a.n, k), sigma));
    if (k <= a.good) eps = std::max(eps, marginal_errors.back());
  }
  const double delta = static_cast<double>(a.n - a.good) / static_cast<double>(a.n);

  r.results()["catalyst"] = {{"n", a.n},
                             {"dimension", a.cat.tau.layout().total_dim()},
                             {"layout", a.cat.tau.layout().to_string()},
                             {"catalyst_residual", a.cat.catalyst_residual},
                             {"system_residual", a.cat.system_residual}};
  r.results()["certificate"] = certificate_json(cert);
  r.results()["source"] = {{"marginal_errors", marginal_errors}, {"epsilon", eps}, {"delta", delta}};
  r.check("catalyst marginal preserved", a.cat.catalyst_residual < 1e-9, a.cat.catalyst_residual, 1e-9);
  r.check("system marginal equals gamma average", a.cat.system_residual < 1e-9, a.cat.system_residual, 1e-9);
  r.check("error within eps + 2 delta", cert.epsilon_achieved <= eps + 2 * delta + 1e-12, cert.epsilon_achieved,
          eps + 2 * delta);
  if (sigma.is_pure()) {
    const auto d = decoupled_catalysis_check(a.cat.embedding, a.cat.tau, a.rho, sigma);
    r.results()["decoupling"] = {{"lhs", d.decoupling_lhs}, {"bound", d.bound}};
    r.check("catalyst decouples", d.pass, d.decoupling_lhs, d.bound);
  }
}

void run_reduce(const Scenario& s, Report& r) {
  const Assembly a = assemble(s);
  const std::size_t copies = s.get_count("copies");
  const std::size_t s_factors = a.rho.layout().size();
  const double delta = verify_catalysis(a.cat.embedding, a.cat.tau, a.rho, a.sigma).epsilon_achieved;
  r.results()["delta"] = delta;
  json runs = json::array(), rows = json::array();
  for (double eps : s.get_reals("epsilons")) {
    if (!(eps >= 0 && eps < 2)) throw ParseError("epsilons must lie in [0, 2)");
    double fidelity = 1.0;
    QState tau_eps = a.cat.tau;
    if (eps > 0) {
      fidelity = resource_fidelity_for_epsilon(a.cat.tau, eps);
      tau_eps = synthesize_tau_eps(a.cat.tau, fidelity).state;
    }
    const double eps_actual = trace_norm_dist(tau_eps, a.cat.tau);
    const auto reuse = iterate_reuse(a.cat.embedding, tau_eps, a.rho, a.sigma, copies,
                                     {.exact_catalyst = a.cat.tau, .catalyst_copies = s.get_count("catalyst_copies")});
    const double max_drift = *std::max_element(reuse.catalyst_drift.begin(), reuse.catalyst_drift.end());
    const double max_error = reuse.certificate.max_error();
    const std::string tag = "eps=" + format_real(eps);
    r.check(tag + " catalyst drift below eps", max_drift < eps + 1e-9, max_drift, eps + 1e-9);
    r.check(tag + " marginal errors below eps + delta", max_error < eps + delta + 1e-9, max_error, eps + delta + 1e-9);
    if (eps == 0) {
      double spread = 0;
      for (double e : reuse.certificate.per_marginal_errors) spread = std::max(spread, std::abs(e - delta));
      r.check(tag + " exact catalyst reproduces delta", spread < 1e-12, spread, 1e-12);
    }
    for (std::size_t i = 0; i < copies; ++i)
      rows.push_back({eps, i + 1, reuse.catalyst_drift[i], reuse.certificate.per_marginal_errors[i]});
    runs.push_back({{"epsilon", eps},
                    {"epsilon_actual", eps_actual},
                    {"resource_fidelity", fidelity},
                    {"catalyst_drift", reuse.catalyst_drift},
                    {"certificate", reduction_json(reuse.certificate)}});
  }
  r.results()["runs"] = std::move(runs);
  r.series("reuse", {"epsilon", "step", "drift", "error"}, std::move(rows));

  if (const std::size_t joint = s.get_count("joint_copies"); joint > 0) {
    ReuseOptions opt;
    opt.track_joint = true;
    const auto tracked = iterate_reuse(a.cat.embedding, a.cat.tau, a.rho, a.sigma, joint, opt);
    double gap = 0;
    const auto ns = a.sigma.layout().size();
    for (std::size_t i = 0; i < joint; ++i)
      gap = std::max(gap, trace_norm_dist(marginal_range(*tracked.joint, i * ns, ns), tracked.marginals[i]));
    r.check("joint tracking agrees with marginals", gap < 1e-9, gap, 1e-9);
  }

  if (const double p = s.get_real("damage"); p > 0) {
    const auto damaged = iterate_reuse(damage_catalyst(a.cat.embedding, s_factors, p), a.cat.tau, a.rho, a.sigma, copies,
                                       {.exact_catalyst = a.cat.tau});
    // Noise on the catalyst compounds across uses until the cycle saturates.
    const auto& d = damaged.catalyst_drift;
    const bool compounds = d.back() > d.front() && d.front() > 1e-6;
    r.results()["damaged_drift"] = d;
    r.check("damaged catalyst drift compounds", compounds, d.back(), d.front());
  }
}

void run_lemma1(const Scenario& s, Report& r) {
  const auto sweep = decoupling_monte_carlo(s.get_count("samples"), s.get_seed("seed"), s.get_real("eps_max"));
  json rows = json::array();
  double worst = 0;
  for (const auto& x : sweep.samples) {
    rows.push_back({x.epsilon, x.lhs, x.rhs});
    worst = std::max(worst, x.lhs / x.rhs);
  }
  r.results()["samples"] = sweep.samples.size();
  r.results()["attempts"] = sweep.attempts;
  r.results()["violations"] = sweep.violations;
  r.results()["max_lhs_over_rhs"] = worst;
  r.series("decoupling", {"epsilon", "lhs", "rhs"}, std::move(rows));
  r.check("no decoupling violations", sweep.violations == 0, static_cast<double>(sweep.violations), 0);
}

void run_bounds(const Scenario& s, Report& r) {
  const std::string spec = s.get("state");
  const QState rho = make_state(spec, s.base_dir);
  SquashedOptions opt;
  opt.max_ext_dim = s.get_count("ext_dim");
  opt.search_budget = s.get_count("budget");
  opt.seed = s.get_seed("seed");
  if (spec.rfind("separable:", 0) == 0) {
    const auto args = spec.substr(10);
    const auto colon = args.find(':');
    const auto seed = std::stoull(args.substr(0, colon));
    const std::size_t terms = colon == std::string::npos ? 3 : std::stoull(args.substr(colon + 1));
    opt.candidate_extensions.push_back(separable_state(seed, terms).extension);
  }
  const auto ed = hashing_bounds(rho);
  const double half_i = half_mutual_information(rho);
  const auto sq = squashed_upper(rho, opt);
  r.results()["hashing"] = {{"lower", ed.lower}, {"upper", ed.upper}};
  r.results()["half_mutual_information"] = half_i;
  r.results()["squashed"] = {{"upper", sq.value},
                             {"extension_dim", sq.extension_dim},
                             {"evaluations", sq.evaluations},
                             {"origin", sq.origin}};
  r.check("hashing lower <= upper", ed.lower <= ed.upper + 1e-12, ed.lower, ed.upper);
  r.check("squashed bound <= half mutual information", sq.value <= half_i + 1e-12, sq.value, half_i);
  if (rho.is_pure()) {
    const double e = entanglement_entropy(rho);
    r.check("squashed bound equals entropy on pure state", std::abs(sq.value - e) < 1e-6, std::abs(sq.value - e), 1e-6);
  }
  if (s.get("sigma") != "none") {
    const QState sigma = make_state(s.get("sigma"), s.base_dir);
    const auto rep = rate_bound_report(rho, sigma, opt);
    r.results()["rate_bound"] = {{"esq_rho_upper", rep.esq_rho_upper},
                                 {"esq_sigma_lower_proxy", rep.esq_sigma_lower_proxy},
                                 {"ratio_upper", rep.ratio_upper},
                                 {"rho_exact", rep.rho_exact},
                                 {"sigma_exact", rep.sigma_exact},
                                 {"notes", rep.notes}};
    if (rep.rho_exact && rep.sigma_exact) {
      const double exact = entanglement_entropy(rho) / entanglement_entropy(sigma);
      r.check("rate bound equals pure rate", std::abs(rep.ratio_upper - exact) < 1e-6,
              std::abs(rep.ratio_upper - exact), 1e-6);
    }
  }
}

void run_superadd(const Scenario& s, Report& r) {
  const double eps = s.get_real("epsilon");
  const auto instances = superadd_instances(s.get_count("instances"), s.get_seed("seed"), eps);
  json rows = json::array();
  double worst = 0;
  bool all = true;
  for (const auto& inst : instances) {
    const auto res = compose_superadditive(inst.lambda1, inst.lambda2, inst.mu12, inst.phi, eps);
    rows.push_back({res.budget, res.error_first, res.error_second, res.combined_error});
    worst = std::max(worst, res.combined_error);
    all = all && res.pass;
  }
  r.results()["instances"] = instances.size();
  r.results()["max_combined_error"] = worst;
  r.series("superadd", {"budget", "error_first", "error_second", "combined_error"}, std::move(rows));
  r.check("combined error below epsilon", all, worst, eps);
}

void run_distill(const Scenario& s, Report& r) {
  const double f0 = s.get_real("f_initial"), f1 = s.get_real("f_target");
  const auto run = distill_to(f1, f0);
  json rounds = json::array();
  bool improving = true;
  for (const auto& x : run.rounds) {
    rounds.push_back({{"fidelity_before", x.fidelity_before},
                      {"fidelity_after", x.fidelity_after},
                      {"success_probability", x.success_probability}});
    improving = improving && x.fidelity_after > x.fidelity_before;
  }
  r.results()["rounds"] = std::move(rounds);
  r.results()["copies_consumed"] = run.copies_consumed;
  r.check("fidelity improves every round", improving, static_cast<double>(run.rounds.size()), 0);

  if (const std::size_t trials = s.get_count("samples"); trials > 0) {
    const double mc = distill_monte_carlo(f1, f0, trials, s.get_seed("seed"));
    const double rel = std::abs(mc - run.copies_consumed) / run.copies_consumed;
    r.results()["copies_monte_carlo"] = mc;
    r.check("sampled copies match expectation", rel < 0.1, rel, 0.1);
  }

  const auto sweep = recurrence_sweep(s.get_real("sweep_min"), s.get_real("sweep_max"), s.get_count("sweep_points"));
  json rows = json::array();
  double gap = 0;
  for (const auto& row : sweep) {
    rows.push_back({row.f_in, row.f_out, row.p, row.expected_copies});
    const auto sim = recurrence_simulation(row.f_in);
    gap = std::max({gap, std::abs(sim.outcome.fidelity - row.f_out), std::abs(sim.outcome.success_probability - row.p)});
  }
  r.series("distill", {"F_in", "F_out", "p", "expected_copies"}, std::move(rows));
  r.results()["max_simulation_gap"] = gap;
  r.check("closed form matches two-copy simulation", gap < 1e-10, gap, 1e-10);
}

void run_synth(const Scenario& s, Report& r) {
  const QState tau = make_state(s.get("tau"), s.base_dir);
  const double f = s.get_real("f_resource");
  const auto approx = synthesize_tau_eps(tau, f);
  r.results()["epsilon"] = approx.epsilon;
  r.results()["resource_fidelity"] = f;
  const double exact = synthesize_tau_eps(tau, 1.0).epsilon;
  r.check("perfect resource reproduces tau", exact < 1e-12, exact, 1e-12);
  const std::size_t points = s.get_count("grid");
  if (points < 2) throw ParseError("key 'grid' needs at least 2 points");
  json rows = json::array();
  bool monotone = true;
  double prev = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points; ++i) {
    const double fi = 0.3 + 0.7 * static_cast<double>(i) / static_cast<double>(points - 1);
    const double e = synthesize_tau_eps(tau, fi).epsilon;
    monotone = monotone && e <= prev + 1e-12;
    prev = e;
    rows.push_back({fi, e});
  }
  r.series("synth", {"F_resource", "epsilon"}, std::move(rows));
  r.check("epsilon non-increasing in resource fidelity", monotone, prev, 0);
}

void run_pure_rate(const Scenario& s, Report& r) {
  const QState rho = make_state(s.get("rho"), s.base_dir);
  const SchmidtVector phi(s.get_reals("phi"));
  const auto rate = pure_target_rate(rho, phi);
  r.results()["rate"] = {{"lower", rate.lower}, {"upper", rate.upper}, {"exact", rate.exact}};
  r.check("rate interval ordered", rate.lower <= rate.upper + 1e-12, rate.lower, rate.upper);
  if (rate.exact) {
    const auto rep = rate_bound_report(rho, canonical_pure_state(phi));
    r.results()["rate_bound_ratio"] = rep.ratio_upper;
    r.check("rate bound matches pure rate", std::abs(rep.ratio_upper - rate.upper) < 1e-6,
            std::abs(rep.ratio_upper - rate.upper), 1e-6);
  }
}

struct Command {
  std::vector<KeySpec> keys;
  std::function<void(const Scenario&, Report&)> run;
  std::string samples_key;
};

const std::map<std::string, Command>& commands() {
  static const std::map<std::string, Command> table = [] {
    const KeySpec seed{"seed", "1", "random seed"};
    const std::vector<KeySpec> assembly = {
        {"rho", "schmidt:0.5,0.5", "input state spec"},
        {"target", "schmidt:0.75,0.25", "target state spec"},
        {"protocol", "nielsen:0.75,0.25", "n-copy protocol spec"},
        {"n", "2", "copies consumed by the protocol"},
        {"good", "0", "leading outputs aimed at the target (0: all)"},
        seed};
    std::map<std::string, Command> t;
    t["catalyze"] = {assembly, run_catalyze, ""};
    auto reduce = assembly;
    reduce.push_back({"copies", "5", "sequential copies"});
    reduce.push_back({"epsilons", "0,0.005,0.01,0.05", "catalyst approximation levels"});
    reduce.push_back({"catalyst_copies", "0", "copies charged for preparing the catalyst"});
    reduce.push_back({"joint_copies", "2", "copies for the joint-state cross-check (0: skip)"});
    reduce.push_back({"damage", "0.05", "negative-control noise on Bob's catalyst (0: skip)"});
    t["reduce"] = {reduce, run_reduce, ""};
    t["verify-lemma1"] = {{{"samples", "10000", "random instances"}, {"eps_max", "0.5", "largest accepted epsilon"}, seed},
                          run_lemma1,
                          "samples"};
    t["bounds"] = {{{"state", "werner:0.9", "state spec"},
                    {"sigma", "none", "state spec for the rate bound report"},
                    {"budget", "200", "extension search budget"},
                    {"ext_dim", "4", "largest extension dimension"},
                    seed},
                   run_bounds,
                   ""};
    t["superadd"] = {{{"instances", "20", "desk instances"}, {"epsilon", "0.3", "target error"}, seed}, run_superadd, ""};
    t["distill"] = {{{"f_initial", "0.8", "input Werner fidelity"},
                     {"f_target", "0.9", "target Werner fidelity"},
                     {"samples", "2000", "Monte Carlo trials (0: skip)"},
                     {"sweep_min", "0.25", "sweep start"},
                     {"sweep_max", "1", "sweep end"},
                     {"sweep_points", "50", "sweep grid size"},
                     seed},
                    run_distill,
                    "samples"};
    t["synth-catalyst"] = {{{"tau", "singlet", "catalyst state spec"},
                            {"f_resource", "0.9", "teleportation resource fidelity"},
                            {"grid", "15", "fidelity grid size on [0.3, 1]"},
                            seed},
                           run_synth,
                           ""};
    t["pure-rate"] = {{{"rho", "schmidt:0.5,0.5", "state spec"}, {"phi", "0.75,0.25", "target Schmidt coefficients"}, seed},
                      run_pure_rate,
                      ""};
    return t;
  }();
  return table;
}

void require_finite(const json& j, const std::string& path) {
  if (j.is_number_float() && !std::isfinite(j.get<double>())) throw std::runtime_error("non-finite value at " + path);
  if (j.is_object())
    for (const auto& [k, v] : j.items()) require_finite(v, path + "/" + k);
  if (j.is_array())
    for (std::size_t i = 0; i < j.size(); ++i) require_finite(j[i], path + "/" + std::to_string(i));
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, _] : commands()) out.push_back(name);
    return out;
  }();
  return names;
}

const std::vector<KeySpec>& command_keys(const std::string& command) {
  const auto it = commands().find(command);
  if (it == commands().end()) throw ParseError("unknown command '" + command + "'");
  return it->second.keys;
}

RunResult run_scenario(Scenario scenario, const Overrides& overrides) {
  if (scenario.command.empty()) throw ParseError("scenario does not name a command");
  const auto it = commands().find(scenario.command);
  if (it == commands().end()) throw ParseError("unknown command '" + scenario.command + "'");
  const Command& cmd = it->second;
  apply_key_specs(scenario, cmd.keys);
  if (overrides.seed) scenario.values["seed"] = std::to_string(*overrides.seed);
  if (overrides.samples) {
    if (cmd.samples_key.empty()) throw ParseError("command '" + scenario.command + "' takes no sample count");
    scenario.values[cmd.samples_key] = std::to_string(*overrides.samples);
  }
  Report report;
  cmd.run(scenario, report);
  RunResult out{report.finish(scenario), report.pass()};
  require_finite(out.report, "");
  return out;
}

std::string render_report(const json& report) {
  require_finite(report, "");
  return report.dump(2) + "\n";
}

}  // namespace corrcat::cli
