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
#include <corrcat/distill.hpp>
#include <corrcat/measures.hpp>
#include <corrcat/purecat.hpp>

#include <doctest.h>

#include <cmath>

using namespace corrcat;

namespace {

// Marginal on a contiguous block of dimension `mid`, with `before` and
// `after` the dimensions traced out on either side.
Matrix block_marginal(const Matrix& m, Eigen::Index before, Eigen::Index mid, Eigen::Index after) {
  Matrix out = Matrix::Zero(mid, mid);
  for (Eigen::Index i = 0; i < before; ++i)
    for (Eigen::Index k = 0; k < after; ++k)
      for (Eigen::Index a = 0; a < mid; ++a)
        for (Eigen::Index b = 0; b < mid; ++b) out(a, b) += m((i * mid + a) * after + k, (i * mid + b) * after + k);
  return out;
}

// Γ_k^{(k)} straight from the Kraus operators of Λ.
std::vector<Matrix> brute_force_gamma(const LoccProtocol& lambda, const QState& rho, std::size_t n) {
  Matrix in = rho.matrix();
  for (std::size_t c = 1; c < n; ++c) in = linalg::kron(in, rho.matrix());
  Matrix gamma = Matrix::Zero(in.rows(), in.cols());
  for (const auto& k : flatten(lambda).kraus) gamma += k * in * k.adjoint();
  const Eigen::Index d = rho.dim();
  std::vector<Matrix> out;
  Eigen::Index before = 1, after = in.rows() / d;
  for (std::size_t k = 0; k < n; ++k) {
    out.push_back(block_marginal(gamma, before, d, after));
    before *= d;
    after /= d;
  }
  return out;
}

QState average(const std::vector<Matrix>& ms, const SystemLayout& layout) {
  Matrix sum = Matrix::Zero(ms.front().rows(), ms.front().cols());
  for (const auto& m : ms) sum += m / static_cast<double>(ms.size());
  return QState(layout, sum);
}

}  // namespace

TEST_CASE("identity protocol gives the trivial catalyst") {
  const QState rho = werner_state(0.8);
  const auto a = build_catalyst(LoccProtocol(rho.layout().repeat(2)), rho, 2);
  Matrix reg = Matrix::Identity(2, 2) / 2.0;
  CHECK((a.tau.matrix() - linalg::kron(rho.matrix(), reg)).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(a.tau.layout() == rho.layout().concat(SystemLayout({{0, 2}})));
  CHECK(a.catalyst_residual < 1e-9);
  CHECK(trace_norm_dist(a.expected_output, rho) < 1e-12);
  const auto cert = verify_catalysis(a.embedding, a.tau, rho, rho);
  CHECK(cert.epsilon_achieved < 1e-12);
  CHECK(cert.catalyst_drift < 1e-12);
}

TEST_CASE("catalyst identities against brute force") {
  for (const auto& inst : cli::catalysis_instances()) {
    CAPTURE(inst.name);
    const auto a = build_catalyst(inst.lambda, inst.rho, inst.n);
    const QState oracle = average(brute_force_gamma(inst.lambda, inst.rho, inst.n), inst.rho.layout());
    const QState mu = apply(flatten(a.embedding), tensor(inst.rho, a.tau));
    const auto s = inst.rho.layout().size();
    CHECK(trace_norm_dist(marginal_range(mu, s, mu.layout().size() - s), a.tau) < 1e-9);
    CHECK(trace_norm_dist(marginal_range(mu, 0, s), oracle) < 1e-9);
    CHECK(a.catalyst_residual < 1e-9);
    CHECK(a.system_residual < 1e-9);
    CHECK(a.gamma_marginals.size() == inst.n);
  }
}

TEST_CASE("catalyst block structure") {
  const QState rho = canonical_pure_state(SchmidtVector({0.5, 0.5}));
  const LoccProtocol lam = tensor_power(synthesize_pure_protocol(SchmidtVector({0.5, 0.5}), SchmidtVector({0.75, 0.25})), 3);
  const auto a = build_catalyst(lam, rho, 3);
  // Register block k (k = 1..3) holds ρ^{⊗(k−1)} ⊗ Γ_{3−k}, weight 1/3.
  const auto d = a.tau.dim();
  const Eigen::Index slots = d / 3;
  for (Eigen::Index k = 0; k < 3; ++k) {
    Matrix block(slots, slots);
    for (Eigen::Index i = 0; i < slots; ++i)
      for (Eigen::Index j = 0; j < slots; ++j) block(i, j) = a.tau.matrix()(i * 3 + k, j * 3 + k);
    CHECK(std::abs(block.trace().real() - 1.0 / 3) < 1e-12);
    for (Eigen::Index l = 0; l < 3; ++l)
      if (l != k) CHECK(std::abs(a.tau.matrix()(k, l)) < 1e-15);
  }
  CHECK(a.tau.layout().total_dim() == 16 * 3);
}

TEST_CASE("build_catalyst rejects bad input") {
  const QState rho = werner_state(0.8);
  CHECK_THROWS_AS(build_catalyst(LoccProtocol(rho.layout().repeat(2)), rho, 3), LayoutError);
  CHECK_THROWS_AS(build_catalyst(LoccProtocol(rho.layout()), rho, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_catalyst(LoccProtocol(rho.layout().repeat(6)), rho, 6), DimensionCapError);
}

TEST_CASE("verify_catalysis flags a wrong catalyst") {
  const QState rho = werner_state(0.8);
  const auto a = build_catalyst(random_protocol(rho.layout().repeat(2), 2, 3), rho, 2);
  const QState wrong = QState::maximally_mixed(a.tau.layout());
  const auto cert = verify_catalysis(a.embedding, wrong, rho, rho);
  CHECK(cert.catalyst_drift > 1e-3);
  CHECK(cert.correlation >= 0);
  CHECK_THROWS_AS(verify_catalysis(a.embedding, a.tau, singlet(), QState::basis(SystemLayout({{0, 2}}), 0)), LayoutError);
}

TEST_CASE("error bound eps + 2 delta") {
  for (const auto& inst : cli::catalysis_instances()) {
    CAPTURE(inst.name);
    const auto a = build_catalyst(inst.lambda, inst.rho, inst.n);
    const auto red = verify_marginal_reduction(inst.lambda, inst.rho, inst.sigma, inst.n, inst.n);
    double eps = 0;
    for (std::size_t k = 0; k < inst.m; ++k) eps = std::max(eps, red.per_marginal_errors[k]);
    const double delta = static_cast<double>(inst.n - inst.m) / static_cast<double>(inst.n);
    const auto cert = verify_catalysis(a.embedding, a.tau, inst.rho, inst.sigma);
    CHECK(cert.epsilon_achieved <= eps + 2 * delta + 1e-12);
  }
}

TEST_CASE("marginal reduction certificates") {
  const QState rho = werner_state(0.7);
  const auto id = verify_marginal_reduction(LoccProtocol(rho.layout().repeat(3)), rho, rho, 3, 3);
  CHECK(id.per_marginal_errors.size() == 3);
  CHECK(id.max_error() < 1e-12);
  CHECK(id.rate_slack == 1.0);
  CHECK_THROWS_AS(verify_marginal_reduction(LoccProtocol(rho.layout().repeat(3)), rho, rho, 3, 0), std::invalid_argument);
  LoccProtocol drop(rho.layout().repeat(3));
  drop.discard({4, 5});
  const auto two = verify_marginal_reduction(drop, rho, rho, 3, 2);
  CHECK(std::abs(two.rate_slack - 2.0 / 3) < 1e-15);
  CHECK_THROWS_AS(verify_marginal_reduction(drop, rho, rho, 3, 3), LayoutError);
}

TEST_CASE("catalyst reuse does not accumulate error") {
  const QState rho = canonical_pure_state(SchmidtVector({0.5, 0.5}));
  const QState sigma = canonical_pure_state(SchmidtVector({0.9, 0.1}));
  const LoccProtocol one = synthesize_pure_protocol(SchmidtVector({0.5, 0.5}), SchmidtVector({0.9, 0.1}));
  const LoccProtocol lam = tensor(one, LoccProtocol(rho.layout()));
  const auto a = build_catalyst(lam, rho, 2);
  const double delta = verify_catalysis(a.embedding, a.tau, rho, sigma).epsilon_achieved;
  CHECK(delta > 0.1);

  ReuseOptions exact;
  exact.exact_catalyst = a.tau;
  const auto fixed = iterate_reuse(a.embedding, a.tau, rho, sigma, 5, exact);
  for (double e : fixed.certificate.per_marginal_errors) CHECK(std::abs(e - delta) < 1e-12);
  for (double d : fixed.catalyst_drift) CHECK(d < 1e-12);

  const double f = resource_fidelity_for_epsilon(a.tau, 0.01);
  const auto approx = synthesize_tau_eps(a.tau, f);
  CHECK(approx.epsilon <= 0.01);
  ReuseOptions opt = exact;
  opt.catalyst_copies = 4;
  const auto r = iterate_reuse(a.embedding, approx.state, rho, sigma, 5, opt);
  CHECK(r.certificate.per_marginal_errors.size() == 5);
  CHECK(r.certificate.n == 9);
  CHECK(std::abs(r.certificate.rate_slack - 5.0 / 9) < 1e-15);
  for (double d : r.catalyst_drift) CHECK(d < 0.01 + 1e-9);
  for (double e : r.certificate.per_marginal_errors) CHECK(e < 0.01 + delta + 1e-9);
}

TEST_CASE("joint tracking agrees with the marginal bookkeeping") {
  const QState rho = werner_state(0.85);
  const auto a = build_catalyst(random_protocol(rho.layout().repeat(2), 2, 5), rho, 2);
  ReuseOptions opt;
  opt.track_joint = true;
  const auto r = iterate_reuse(a.embedding, synthesize_tau_eps(a.tau, 0.95).state, rho, rho, 3, opt);
  REQUIRE(r.joint);
  CHECK(r.joint->layout() == rho.layout().repeat(3).concat(a.tau.layout()));
  for (std::size_t i = 0; i < 3; ++i) CHECK(trace_norm_dist(marginal_range(*r.joint, 2 * i, 2), r.marginals[i]) < 1e-10);
  CHECK(trace_norm_dist(marginal_range(*r.joint, 6, a.tau.layout().size()), r.final_catalyst) < 1e-10);
  CHECK_THROWS_AS(iterate_reuse(a.embedding, a.tau, rho, rho, 4, opt), DimensionCapError);
}

TEST_CASE("a damaging protocol compounds drift") {
  const QState rho = canonical_pure_state(SchmidtVector({0.5, 0.5}));
  const LoccProtocol lam = tensor_power(synthesize_pure_protocol(SchmidtVector({0.5, 0.5}), SchmidtVector({0.8, 0.2})), 2);
  const auto a = build_catalyst(lam, rho, 2);
  ReuseOptions opt;
  opt.exact_catalyst = a.tau;
  const auto r = iterate_reuse(damage_catalyst(a.embedding, 2, 0.05), a.tau, rho, rho, 5, opt);
  // Grows until the n-step cycle has replaced every slot, then saturates.
  CHECK(r.catalyst_drift[1] > r.catalyst_drift[0] + 1e-3);
  for (std::size_t i = 2; i < r.catalyst_drift.size(); ++i)
    CHECK(r.catalyst_drift[i] == doctest::Approx(r.catalyst_drift[1]).epsilon(1e-12));
  CHECK(r.catalyst_drift.front() > 0.05);
}

TEST_CASE("decoupled catalysis") {
  const QState rho = canonical_pure_state(SchmidtVector({0.5, 0.5}));
  const QState phi = canonical_pure_state(SchmidtVector({0.75, 0.25}));
  const LoccProtocol lam = tensor_power(synthesize_pure_protocol(SchmidtVector({0.5, 0.5}), SchmidtVector({0.75, 0.25})), 2);
  const auto a = build_catalyst(lam, rho, 2);
  const auto exact = decoupled_catalysis_check(a.embedding, a.tau, rho, phi);
  CHECK(exact.catalysis.correlation < 1e-9);
  CHECK(exact.decoupling_lhs < 1e-9);
  CHECK(exact.pass);

  // Near miss: aim at a slightly different pure target.
  const QState near = canonical_pure_state(SchmidtVector({0.76, 0.24}));
  const auto approx = decoupled_catalysis_check(a.embedding, a.tau, rho, near);
  CHECK(approx.catalysis.epsilon_achieved > 0);
  CHECK(approx.pass);
  CHECK(approx.decoupling_lhs <= approx.bound);

  CHECK_THROWS_AS(decoupled_catalysis_check(a.embedding, a.tau, rho, werner_state(0.9)), StateError);
}
