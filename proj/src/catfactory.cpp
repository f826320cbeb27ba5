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
#include <corrcat/measures.hpp>

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace corrcat {

namespace {

std::vector<std::size_t> slot_factors(std::size_t slot, std::size_t s) {
  std::vector<std::size_t> out(s);
  std::iota(out.begin(), out.end(), slot * s);
  return out;
}

Matrix cyclic_shift(std::size_t n) {
  const auto d = static_cast<Eigen::Index>(n);
  Matrix u = Matrix::Zero(d, d);
  for (Eigen::Index r = 0; r < d; ++r) u((r + 1) % d, r) = 1;
  return u;
}

// μ = Λ(ρ ⊗ τ) with the layout checks shared by the verifiers.
QState catalytic_output(const LoccProtocol& lambda, const QState& tau, const QState& rho, const QState& sigma) {
  if (!(lambda.input_layout() == rho.layout().concat(tau.layout())))
    throw LayoutError("protocol input " + lambda.input_layout().to_string() + " is not system " +
                      rho.layout().to_string() + " followed by catalyst " + tau.layout().to_string());
  if (!(lambda.output_layout() == sigma.layout().concat(tau.layout())))
    throw LayoutError("protocol output " + lambda.output_layout().to_string() + " is not target " +
                      sigma.layout().to_string() + " followed by catalyst " + tau.layout().to_string());
  return apply(flatten(lambda), tensor(rho, tau));
}

CatalysisCertificate certify(const QState& mu, const QState& tau, const QState& sigma) {
  const auto ns = sigma.layout().size();
  const QState mu_s = marginal_range(mu, 0, ns);
  const QState mu_c = marginal_range(mu, ns, mu.layout().size() - ns);
  return {trace_norm_dist(mu_s, sigma), trace_norm_dist(mu_c, tau), trace_norm_dist(mu, tensor(mu_s, mu_c))};
}

}  // namespace

QState gamma_marginal(const QState& gamma, const SystemLayout& copy_layout, std::size_t i, std::size_t j) {
  const auto s = copy_layout.size();
  if (j == 0 || j > i || i * s > gamma.layout().size()) throw std::out_of_range("gamma_marginal: need 1 <= j <= i <= n");
  return marginal_range(marginal_range(gamma, 0, i * s), (j - 1) * s, s);
}

CatalystAssembly build_catalyst(const LoccProtocol& lambda_n, const QState& rho, std::size_t n) {
  if (n < 2) throw std::invalid_argument("build_catalyst: need n >= 2 copies");
  const SystemLayout& copy = rho.layout();
  const std::size_t s = copy.size();
  const SystemLayout copies = copy.repeat(n);
  if (!(lambda_n.input_layout() == copies) || !(lambda_n.output_layout() == copies))
    throw LayoutError("build_catalyst: protocol must map " + copies.to_string() + " to itself");
  double total = static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) total *= static_cast<double>(copy.total_dim());
  if (total > static_cast<double>(kMaxTotalDim))
    throw DimensionCapError("build_catalyst: system plus catalyst would exceed dimension " + std::to_string(kMaxTotalDim));

  CatalystAssembly a;
  a.n = n;
  a.gamma = apply(flatten(lambda_n), tensor_power(rho, n));

  // τ = (1/n) Σ_k ρ^{⊗(k−1)} ⊗ Γ_{n−k} ⊗ |k⟩⟨k|.
  const SystemLayout cat_layout = copy.repeat(n - 1).concat(SystemLayout({{0, n}}));
  const auto dc = static_cast<Eigen::Index>(cat_layout.total_dim());
  Matrix tau = Matrix::Zero(dc, dc);
  for (std::size_t k = 1; k <= n; ++k) {
    const QState head = tensor_power(rho, k - 1);
    const QState block = n - k == 0 ? head : tensor(head, marginal_range(a.gamma, 0, (n - k) * s));
    Matrix reg = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    reg(static_cast<Eigen::Index>(k - 1), static_cast<Eigen::Index>(k - 1)) = 1.0 / static_cast<double>(n);
    tau += linalg::kron(block.matrix(), reg);
  }
  a.tau = QState(cat_layout, tau);

  // Embedding on S ⊗ C; slot 0 is S, slots 1..n−1 are C_1..C_{n−1}.
  const SystemLayout sc = copy.concat(cat_layout);
  const std::size_t reg = n * s;
  std::vector<LoccProtocol> branches;
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<std::size_t> slot_order(n);
    std::iota(slot_order.begin(), slot_order.end(), 0);
    slot_order[0] = n - 1;
    slot_order[k] = 0;
    for (std::size_t j = k; j + 1 < n; ++j) slot_order[j + 1] = j;
    std::vector<std::size_t> order;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t f = 0; f < s; ++f) order.push_back(slot_order[p] * s + f);
    order.push_back(reg);
    branches.push_back(local_permutation(sc, order));
  }
  {
    std::vector<std::size_t> targets;
    for (std::size_t t = 1; t < n; ++t)
      for (auto f : slot_factors(t, s)) targets.push_back(f);
    for (auto f : slot_factors(0, s)) targets.push_back(f);
    LoccProtocol last(sc);
    last.nested(std::move(targets), lambda_n);
    branches.push_back(std::move(last));
  }
  a.embedding = controlled_on_register(sc, reg, std::move(branches));
  a.embedding.local_unitary(0, {reg}, cyclic_shift(n));

  for (std::size_t k = 1; k <= n; ++k) a.gamma_marginals.push_back(gamma_marginal(a.gamma, copy, k, k));
  Matrix avg = Matrix::Zero(rho.dim(), rho.dim());
  for (const auto& g : a.gamma_marginals) avg += g.matrix() / static_cast<double>(n);
  a.expected_output = QState(copy, avg);

  const QState mu = apply(flatten(a.embedding), tensor(rho, a.tau));
  a.catalyst_residual = trace_norm_dist(marginal_range(mu, s, mu.layout().size() - s), a.tau);
  a.system_residual = trace_norm_dist(marginal_range(mu, 0, s), a.expected_output);
  return a;
}

CatalysisCertificate verify_catalysis(const LoccProtocol& lambda, const QState& tau, const QState& rho,
                                      const QState& sigma) {
  return certify(catalytic_output(lambda, tau, rho, sigma), tau, sigma);
}

double ReductionCertificate::max_error() const {
  return per_marginal_errors.empty() ? 0.0 : *std::max_element(per_marginal_errors.begin(), per_marginal_errors.end());
}

ReductionCertificate verify_marginal_reduction(const LoccProtocol& lambda, const QState& rho, const QState& sigma,
                                               std::size_t n, std::size_t m) {
  if (n == 0 || m == 0) throw std::invalid_argument("verify_marginal_reduction: n and m must be positive");
  if (!(lambda.input_layout() == rho.layout().repeat(n)))
    throw LayoutError("verify_marginal_reduction: protocol input is not " + std::to_string(n) + " copies of rho");
  if (!(lambda.output_layout() == sigma.layout().repeat(m)))
    throw LayoutError("verify_marginal_reduction: protocol output is not " + std::to_string(m) + " copies of sigma");
  const QState out = apply(flatten(lambda), tensor_power(rho, n));
  ReductionCertificate cert{n, m, {}, static_cast<double>(m) / static_cast<double>(n)};
  const auto s = sigma.layout().size();
  for (std::size_t i = 0; i < m; ++i) cert.per_marginal_errors.push_back(trace_norm_dist(marginal_range(out, i * s, s), sigma));
  return cert;
}

ReuseResult iterate_reuse(const LoccProtocol& lambda, const QState& tau_eps, const QState& rho, const QState& sigma,
                          std::size_t copies, const ReuseOptions& options) {
  if (copies == 0) throw std::invalid_argument("iterate_reuse: need at least one copy");
  if (!(lambda.input_layout() == rho.layout().concat(tau_eps.layout())) ||
      !(lambda.output_layout() == sigma.layout().concat(tau_eps.layout())))
    throw LayoutError("iterate_reuse: protocol does not act on system followed by catalyst");
  if (options.exact_catalyst && !(options.exact_catalyst->layout() == tau_eps.layout()))
    throw LayoutError("iterate_reuse: exact catalyst layout differs from the approximate one");
  if (options.track_joint) {
    if (copies > kMaxJointCopies)
      throw DimensionCapError("iterate_reuse: joint tracking is limited to " + std::to_string(kMaxJointCopies) + " copies");
    double d = static_cast<double>(tau_eps.layout().total_dim()) * static_cast<double>(rho.layout().total_dim());
    for (std::size_t i = 0; i < copies; ++i) d *= static_cast<double>(sigma.layout().total_dim());
    if (d > static_cast<double>(kMaxTotalDim)) throw DimensionCapError("iterate_reuse: joint state exceeds the dimension cap");
  }

  const Channel c = flatten(lambda);
  const auto ns = sigma.layout().size(), nr = rho.layout().size(), nc = tau_eps.layout().size();
  ReuseResult r;
  r.certificate = {copies + options.catalyst_copies, copies, {}, 0};
  r.certificate.rate_slack = static_cast<double>(copies) / static_cast<double>(r.certificate.n);
  QState catalyst = tau_eps;
  std::optional<QState> joint;
  if (options.track_joint) joint = tau_eps;
  for (std::size_t i = 0; i < copies; ++i) {
    const QState mu = apply(c, tensor(rho, catalyst));
    r.marginals.push_back(marginal_range(mu, 0, ns));
    catalyst = marginal_range(mu, ns, nc);
    r.certificate.per_marginal_errors.push_back(trace_norm_dist(r.marginals.back(), sigma));
    if (options.exact_catalyst) r.catalyst_drift.push_back(trace_norm_dist(catalyst, *options.exact_catalyst));
    if (joint) {
      // [S_1..S_i, C] ⊗ R → [S_1..S_i, R, C], then Λ on the trailing factors.
      const QState grown = tensor(*joint, rho);
      const std::size_t done = i * ns;
      std::vector<std::size_t> order(done);
      std::iota(order.begin(), order.end(), 0);
      for (std::size_t f = 0; f < nr; ++f) order.push_back(done + nc + f);
      for (std::size_t f = 0; f < nc; ++f) order.push_back(done + f);
      std::vector<std::size_t> targets(nr + nc);
      std::iota(targets.begin(), targets.end(), done);
      joint = apply_to_factors(c, permute(grown, order), targets);
    }
  }
  r.final_catalyst = catalyst;
  r.joint = std::move(joint);
  return r;
}

DecoupledCertificate decoupled_catalysis_check(const LoccProtocol& lambda, const QState& tau, const QState& rho,
                                               const QState& phi) {
  if (!phi.is_pure()) throw StateError("decoupled_catalysis_check: target is not pure");
  const QState mu = catalytic_output(lambda, tau, rho, phi);
  DecoupledCertificate d;
  d.catalysis = certify(mu, tau, phi);
  const auto ns = phi.layout().size();
  d.decoupling_lhs = trace_norm_dist(mu, tensor(phi, marginal_range(mu, ns, mu.layout().size() - ns)));
  d.bound = decoupling_bound(d.catalysis.epsilon_achieved);
  d.pass = d.decoupling_lhs < d.bound + kDecouplingSlack;
  return d;
}

LoccProtocol damage_catalyst(const LoccProtocol& lambda, std::size_t system_factors, double p) {
  LoccProtocol out = lambda;
  const SystemLayout& layout = lambda.output_layout();
  for (std::size_t i = system_factors; i < layout.size(); ++i) {
    const auto& f = layout[i];
    if (f.party != 1) continue;
    Outcome noise{"noise", teleport_channel(1.0 - p, f.dim, 1).kraus};
    out.local(1, {i}, Instrument({std::move(noise)}));
  }
  return out;
}

}  // namespace corrcat
