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


// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <corrcat/catfactory.hpp>
#include <corrcat/cli/instances.hpp>
#include <corrcat/cli/runner.hpp>
#include <corrcat/cli/scenario.hpp>
#include <corrcat/distill.hpp>
#include <corrcat/measures.hpp>
#include <corrcat/purecat.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

using namespace corrcat;

namespace {

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

struct Verdict {
  bool pass = true;
  std::string detail;
};

Matrix block_marginal(const Matrix& m, Eigen::Index before, Eigen::Index mid, Eigen::Index after) {
  Matrix out = Matrix::Zero(mid, mid);
  for (Eigen::Index i = 0; i < before; ++i)
    for (Eigen::Index k = 0; k < after; ++k)
      for (Eigen::Index a = 0; a < mid; ++a)
        for (Eigen::Index b = 0; b < mid; ++b) out(a, b) += m((i * mid + a) * after + k, (i * mid + b) * after + k);
  return out;
}

// (1/n) Σ_k Γ_k^{(k)} evaluated straight from the Kraus operators of Λ.
Matrix brute_force_average(const LoccProtocol& lambda, const QState& rho, std::size_t n) {
  Matrix in = rho.matrix();
  for (std::size_t c = 1; c < n; ++c) in = linalg::kron(in, rho.matrix());
  Matrix gamma = Matrix::Zero(in.rows(), in.cols());
  for (const auto& k : flatten(lambda).kraus) gamma += k * in * k.adjoint();
  const Eigen::Index d = rho.dim();
  Matrix avg = Matrix::Zero(d, d);
  Eigen::Index before = 1, after = in.rows() / d;
  for (std::size_t k = 0; k < n; ++k) {
    avg += block_marginal(gamma, before, d, after) / static_cast<double>(n);
    before *= d;
    after /= d;
  }
  return avg;
}

double measured_epsilon(const LoccProtocol& lambda, const QState& rho, const QState& sigma, std::size_t n,
                        std::size_t m) {
  const auto red = verify_marginal_reduction(lambda, rho, sigma, n, n);
  return *std::max_element(red.per_marginal_errors.begin(), red.per_marginal_errors.begin() + static_cast<long>(m));
}

Verdict catalyst_identity() {
  Verdict o;
  std::size_t count = 0;
  double worst_c = 0, worst_s = 0;
  for (const auto& inst : cli::catalysis_instances()) {
    if (inst.n < 2 || inst.n > 3 || inst.rho.dim() != 4) continue;
    const auto a = build_catalyst(inst.lambda, inst.rho, inst.n);
    const QState mu = apply(flatten(a.embedding), tensor(inst.rho, a.tau));
    const auto s = inst.rho.layout().size();
    const double dc = trace_norm_dist(marginal_range(mu, s, mu.layout().size() - s), a.tau);
    const double ds = trace_norm_dist(marginal_range(mu, 0, s),
                                      QState(inst.rho.layout(), brute_force_average(inst.lambda, inst.rho, inst.n)));
    worst_c = std::max(worst_c, dc);
    worst_s = std::max(worst_s, ds);
    if (!(dc < 1e-9 && ds < 1e-9)) o.pass = false;
    ++count;
  }
  if (count < 5) o.pass = false;
  o.detail = std::to_string(count) + " instances, max catalyst residual " + sci(worst_c) +
             ", max system residual " + sci(worst_s);
  return o;
}

Verdict error_bound() {
  Verdict o;
  double worst = -1;
  for (const auto& inst : cli::catalysis_instances()) {
    const auto a = build_catalyst(inst.lambda, inst.rho, inst.n);
    const double eps = measured_epsilon(inst.lambda, inst.rho, inst.sigma, inst.n, inst.m);
    const double delta = static_cast<double>(inst.n - inst.m) / static_cast<double>(inst.n);
    const double got = verify_catalysis(a.embedding, a.tau, inst.rho, inst.sigma).epsilon_achieved;
    const double bound = eps + 2 * delta;
    worst = std::max(worst, got - bound);
    if (!(got <= bound + 1e-12)) o.pass = false;
  }
  o.detail = "max (achieved - bound) " + sci(worst);
  return o;
}

Verdict non_accumulation() {
  Verdict o;
  struct Case {
    QState rho, sigma;
    LoccProtocol lambda;
  };
  std::vector<Case> cases;
  {
    const SchmidtVector src({0.5, 0.5}), dst({0.9, 0.1});
    const QState rho = canonical_pure_state(src);
    cases.push_back({rho, canonical_pure_state(dst),
                     tensor(synthesize_pure_protocol(src, dst), LoccProtocol(rho.layout()))});
  }
  {
    const QState rho = werner_state(0.85);
    cases.push_back({rho, rho, random_protocol(rho.layout().repeat(2), 2, 11)});
  }
  double worst_drift = -1, worst_err = -1;
  for (const auto& c : cases) {
    const auto a = build_catalyst(c.lambda, c.rho, 2);
    const double delta = verify_catalysis(a.embedding, a.tau, c.rho, c.sigma).epsilon_achieved;
    for (double eps : {0.005, 0.01, 0.05}) {
      const auto approx = synthesize_tau_eps(a.tau, resource_fidelity_for_epsilon(a.tau, eps));
      ReuseOptions opt;
      opt.exact_catalyst = a.tau;
      const auto r = iterate_reuse(a.embedding, approx.state, c.rho, c.sigma, 5, opt);
      for (double d : r.catalyst_drift) {
        worst_drift = std::max(worst_drift, d - eps);
        if (!(d < eps + 1e-9)) o.pass = false;
      }
      for (double e : r.certificate.per_marginal_errors) {
        worst_err = std::max(worst_err, e - eps - delta);
        if (!(e < eps + delta + 1e-9)) o.pass = false;
      }
    }
  }
  o.detail = "max (drift - eps) " + sci(worst_drift) + ", max (error - eps - delta) " +
             sci(worst_err);
  return o;
}

Verdict decoupling() {
  const auto sweep = decoupling_monte_carlo(10000, 2026);
  Verdict o;
  o.pass = sweep.violations == 0 && sweep.samples.size() == 10000;
  o.detail = std::to_string(sweep.samples.size()) + " samples, " + std::to_string(sweep.violations) + " violations";
  return o;
}

Verdict fuchs_van_de_graaf() {
  Verdict o;
  std::size_t violations = 0;
  const SystemLayout layouts[] = {SystemLayout({{0, 2}}), SystemLayout::bipartite(2, 2), SystemLayout::bipartite(2, 3)};
  for (std::uint64_t i = 0; i < 10000; ++i) {
    const SystemLayout& l = layouts[i % 3];
    const auto ea = (i % 4 == 0) ? Ensemble::kHaarPure : Ensemble::kGinibreMixed;
    const auto eb = (i % 5 == 0) ? Ensemble::kHaarPure : Ensemble::kGinibreMixed;
    const QState a = random_state(l, ea, 2 * i + 1, i % 7 == 0 ? 1 : 0);
    const QState b = random_state(l, eb, 2 * i + 2);
    const double f = fidelity(a, b);
    const double t = 0.5 * trace_norm_dist(a, b);
    if (!(1 - f <= t + 1e-10) || !(t <= std::sqrt(std::max(0.0, 1 - f * f)) + 1e-10)) ++violations;
  }
  o.pass = violations == 0;
  o.detail = "10000 pairs, " + std::to_string(violations) + " violations";
  return o;
}

Verdict superadditivity() {
  Verdict o;
  const double eps = 0.3;
  const auto inst = cli::superadd_instances(20, 404, eps);
  double worst = 0;
  for (const auto& s : inst) {
    const auto r = compose_superadditive(s.lambda1, s.lambda2, s.mu12, s.phi, eps);
    if (!(r.error_first < eps * eps / 100 && r.error_second < eps * eps / 100)) o.pass = false;
    if (!(r.combined_error < eps)) o.pass = false;
    worst = std::max(worst, r.combined_error);
  }
  if (inst.size() != 20) o.pass = false;
  o.detail = std::to_string(inst.size()) + " instances, max combined error " + sci(worst);
  return o;
}

Verdict hashing() {
  Verdict o;
  const auto s = hashing_bounds(singlet());
  if (!(std::abs(s.lower - 1) < 1e-9 && std::abs(s.upper - 1) < 1e-9)) o.pass = false;
  double worst = 0;
  for (int i = 0; i <= 30; ++i) {
    const double f = 0.25 + 0.75 * i / 30.0;
    RealVector ev = werner_state(f).eigenvalues();
    std::sort(ev.begin(), ev.end());
    std::vector<double> ref{(1 - f) / 3, (1 - f) / 3, (1 - f) / 3, f};
    std::sort(ref.begin(), ref.end());
    for (int k = 0; k < 4; ++k) worst = std::max(worst, std::abs(ev(k) - ref[static_cast<std::size_t>(k)]));
    const auto b = hashing_bounds(werner_state(f));
    double h = 0;
    for (double p : ref)
      if (p > 0) h -= p * std::log2(p);
    if (!(std::abs(b.lower - (1 - h)) < 1e-9 && b.lower <= b.upper + 1e-12)) o.pass = false;
  }
  if (!(worst < 1e-12)) o.pass = false;
  if (!(std::abs(hashing_bounds(werner_state(0.9)).lower - 0.37250815633860301) < 1e-9)) o.pass = false;
  o.detail = "singlet (" + sci(s.lower) + ", " + sci(s.upper) + "), max spectrum error " +
             sci(worst);
  return o;
}

Verdict squashed() {
  Verdict o;
  double worst_pure = 0, worst_sep = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const QState psi = random_state(seed % 2 ? SystemLayout::bipartite(2, 2) : SystemLayout::bipartite(2, 3),
                                    Ensemble::kHaarPure, 700 + seed);
    const auto b = squashed_upper(psi);
    worst_pure = std::max(worst_pure, std::abs(b.value - entanglement_entropy(psi)));
    if (!(b.value <= half_mutual_information(psi) + 1e-12)) o.pass = false;
  }
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto f = cli::separable_state(900 + seed, 1 + seed % 4);
    SquashedOptions opt;
    opt.candidate_extensions = {f.extension};
    const auto b = squashed_upper(f.state, opt);
    worst_sep = std::max(worst_sep, b.value);
    if (!(b.value <= half_mutual_information(f.state) + 1e-12)) o.pass = false;
  }
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const QState r = random_state(SystemLayout::bipartite(2, 2), Ensemble::kGinibreMixed, 800 + seed);
    if (!(squashed_upper(r).value <= half_mutual_information(r) + 1e-12)) o.pass = false;
  }
  if (!(worst_pure < 1e-6 && worst_sep <= 1e-6)) o.pass = false;
  o.detail = "max pure deviation " + sci(worst_pure) + ", max separable value " + sci(worst_sep);
  return o;
}

Verdict rate_report() {
  Verdict o;
  double worst = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const QState rho = random_state(SystemLayout::bipartite(2, 2), Ensemble::kHaarPure, 1200 + seed);
    const SchmidtVector phi({0.5 + 0.04 * static_cast<double>(seed), 0.5 - 0.04 * static_cast<double>(seed)});
    const QState sigma = canonical_pure_state(phi);
    const double expect = entanglement_entropy(rho) / entanglement_entropy(sigma);
    const auto r = rate_bound_report(rho, sigma);
    const auto exact = pure_target_rate(rho, phi);
    worst = std::max({worst, std::abs(r.ratio_upper - expect), std::abs(exact.lower - expect),
                      std::abs(exact.upper - expect)});
    if (!r.rho_exact || !r.sigma_exact || !exact.exact) o.pass = false;
  }
  if (!(worst < 1e-6)) o.pass = false;
  o.detail = "max ratio deviation " + sci(worst);
  return o;
}

Verdict recurrence() {
  Verdict o;
  double worst = 0;
  for (int i = 0; i < 50; ++i) {
    const double f = 0.25 + 0.75 * i / 49.0;
    const auto closed = recurrence_step(f);
    const auto sim = recurrence_simulation(f);
    worst = std::max({worst, std::abs(closed.fidelity - sim.outcome.fidelity),
                      std::abs(closed.success_probability - sim.outcome.success_probability),
                      std::abs(singlet_fidelity(sim.output) - closed.fidelity)});
  }
  const double f08 = recurrence_step(0.8).fidelity;
  o.pass = worst < 1e-10 && std::abs(f08 - 0.838150289017341) < 1e-12 && std::abs(f08 - 0.8382) < 5e-5;
  o.detail = "max deviation " + sci(worst) + ", F(0.8) = " + sci(f08);
  return o;
}

Verdict majorization_gate() {
  Verdict o;
  const SchmidtVector src({0.4, 0.4, 0.1, 0.1}), dst({0.5, 0.25, 0.25});
  const auto plain = majorizes(dst, src);
  const auto cat = catalytic_convertible(src, dst, SchmidtVector({0.6, 0.4}));
  o.pass = !plain.convertible && plain.violated_index == std::size_t{2} && cat.convertible;
  o.detail = std::string("without catalyst ") + (plain.convertible ? "convertible" : "blocked") + ", with catalyst " +
             (cat.convertible ? "convertible" : "blocked");
  return o;
}

Verdict determinism() {
  Verdict o;
  const char* scenarios[] = {
      "command = verify-lemma1\nsamples = 2000\nseed = 99\n",
      "command = catalyze\nrho = werner:0.85\ntarget = werner:0.85\nprotocol = random-locc:5\nn = 2\nseed = 3\n",
      "command = bounds\nstate = ginibre:4\nbudget = 60\nseed = 8\n",
      "command = superadd\ninstances = 5\nseed = 21\n",
      "command = distill\nsamples = 300\nsweep_points = 10\nseed = 5\n",
  };
  std::size_t differing = 0;
  for (const char* text : scenarios) {
    const auto s = cli::parse_scenario(text);
    if (cli::render_report(cli::run_scenario(s).report) != cli::render_report(cli::run_scenario(s).report)) ++differing;
  }
  o.pass = differing == 0;
  o.detail = std::to_string(std::size(scenarios)) + " scenarios, " + std::to_string(differing) + " differing";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"catalyst-identity", catalyst_identity},
      {"catalysis-error-bound", error_bound},
      {"reuse-non-accumulation", non_accumulation},
      {"decoupling-lemma", decoupling},
      {"fuchs-van-de-graaf", fuchs_van_de_graaf},
      {"superadditive-composition", superadditivity},
      {"hashing-sandwich", hashing},
      {"squashed-consistency", squashed},
      {"rate-report", rate_report},
      {"recurrence-oracle", recurrence},
      {"majorization-gate", majorization_gate},
      {"determinism", determinism},
  };
  int failed = 0;
  int index = 1;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %2d %-26s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", index++, name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
