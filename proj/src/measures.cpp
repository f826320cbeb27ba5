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

#include <corrcat/measures.hpp>
#include <corrcat/random.hpp>

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace corrcat {

namespace {

void require_bipartite(const QState& rho, const Bipartition& cut, const char* what) {
  if (rho.layout().parties().size() != 2)
    throw LayoutError(std::string(what) + ": expected a bipartite layout, got " + rho.layout().to_string());
  if (cut.a_factors(rho.layout()).empty() || cut.b_factors(rho.layout()).empty())
    throw LayoutError(std::string(what) + ": bipartition leaves one side empty");
}

std::vector<std::size_t> join(std::vector<std::size_t> a, const std::vector<std::size_t>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  return a;
}

}  // namespace

EdBounds hashing_bounds(const QState& rho, const Bipartition& cut) {
  require_bipartite(rho, cut, "hashing_bounds");
  const double s_a = von_neumann_entropy(partial_trace(rho, cut.a_factors(rho.layout())));
  return {s_a - von_neumann_entropy(rho), s_a};
}

double cqmi(const QState& rho_abe, const Tripartition& parts) {
  const auto& layout = rho_abe.layout();
  const auto a = layout.factors_of(parts.a);
  const auto b = layout.factors_of(parts.b);
  const auto e = layout.factors_of(parts.e);
  if (a.empty() || b.empty() || a.size() + b.size() + e.size() != layout.size())
    throw LayoutError("cqmi: layout " + layout.to_string() + " is not split into A, B, E blocks");
  const double s_e = e.empty() ? 0.0 : von_neumann_entropy(partial_trace(rho_abe, e));
  return von_neumann_entropy(partial_trace(rho_abe, join(a, e))) + von_neumann_entropy(partial_trace(rho_abe, join(b, e))) -
         von_neumann_entropy(rho_abe) - s_e;
}

double half_mutual_information(const QState& rho, const Bipartition& cut) {
  const auto a = cut.a_factors(rho.layout());
  const auto b = cut.b_factors(rho.layout());
  return 0.5 * (von_neumann_entropy(partial_trace(rho, a)) + von_neumann_entropy(partial_trace(rho, b)) -
                von_neumann_entropy(rho));
}

// ---------------------------------------------------------------------------
// Squashed entanglement search

namespace {

class ExtensionSearch {
 public:
  ExtensionSearch(const QState& rho, const SquashedOptions& options)
      : rho_(rho), options_(options), e_party_(rho.layout().max_party() + 1) {
    parts_.a = {rho.layout()[0].party};
    parts_.b.clear();
    for (int p : rho.layout().parties())
      if (p != parts_.a.front()) parts_.b.push_back(p);
    parts_.e = {e_party_};
  }

  bool exhausted() const { return best_.evaluations >= options_.search_budget; }
  const SquashedBound& best() const { return best_; }

  // Scores one extension whose leading factors are ρ's and whose remaining
  // factors have been merged into a single E factor.
  double consider(const QState& ext, const std::string& origin) {
    const double v = 0.5 * cqmi(ext, parts_);
    ++best_.evaluations;
    if (best_.evaluations == 1 || v < best_.value) {
      best_.value = v;
      best_.extension_dim = ext.layout()[ext.layout().size() - 1].dim;
      best_.extension_state = ext;
      best_.origin = origin;
    }
    return v;
  }

  QState with_e(const Matrix& m, std::size_t e_dim) const {
    SystemLayout layout = rho_.layout().concat(SystemLayout({{e_party_, e_dim}}));
    return QState(std::move(layout), m, QState::Check::kLight);
  }

  int e_party() const { return e_party_; }

 private:
  const QState& rho_;
  const SquashedOptions& options_;
  int e_party_;
  Tripartition parts_;
  SquashedBound best_;
};

// ρ^{ABE} = Tr_F[(I ⊗ V)|ψ⟩⟨ψ|(I ⊗ V)†] for V: R → E ⊗ F.
Matrix extension_from_isometry(const Matrix& psi_mat, const Matrix& v, Eigen::Index e_dim) {
  const Eigen::Index d_ab = psi_mat.rows();
  const Eigen::Index f_dim = v.rows() / e_dim;
  const Matrix x = psi_mat * v.transpose();  // d_ab x (e·f)
  Matrix m(d_ab * e_dim, f_dim);
  for (Eigen::Index s = 0; s < d_ab; ++s)
    for (Eigen::Index e = 0; e < e_dim; ++e) m.row(s * e_dim + e) = x.block(s, e * f_dim, 1, f_dim);
  return m * m.adjoint();
}

}  // namespace

SquashedBound squashed_upper(const QState& rho, const SquashedOptions& options) {
  require_bipartite(rho, Bipartition{{rho.layout()[0].party}}, "squashed_upper");
  if (options.search_budget == 0) throw std::invalid_argument("squashed_upper: search budget must be positive");
  if (options.max_ext_dim == 0) throw std::invalid_argument("squashed_upper: extension dimension must be positive");

  ExtensionSearch search(rho, options);
  const Eigen::Index d = rho.dim();

  // Trivial extension: ½ I(A;B).
  search.consider(search.with_e(rho.matrix(), 1), "trivial");

  // Flagged spectral decomposition.
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  std::vector<Eigen::Index> support;
  for (Eigen::Index i = d; i-- > 0;)
    if (es.eigenvalues()(i) > 1e-14) support.push_back(i);
  const auto rank = static_cast<Eigen::Index>(support.size());
  if (!search.exhausted() && rank > 1 && static_cast<std::size_t>(rank) <= options.max_ext_dim) {
    Matrix m = Matrix::Zero(d * rank, d * rank);
    for (Eigen::Index k = 0; k < rank; ++k) {
      const Eigen::Index i = support[static_cast<std::size_t>(k)];
      const Vector v = es.eigenvectors().col(i);
      const Matrix block = es.eigenvalues()(i) * (v * v.adjoint());
      for (Eigen::Index r = 0; r < d; ++r)
        for (Eigen::Index c = 0; c < d; ++c) m(r * rank + k, c * rank + k) = block(r, c);
    }
    search.consider(search.with_e(m, static_cast<std::size_t>(rank)), "spectral");
  }

  // Caller-supplied extensions.
  for (const auto& ext : options.candidate_extensions) {
    if (search.exhausted()) break;
    const auto n = rho.layout().size();
    if (ext.layout().size() <= n)
      throw LayoutError("squashed_upper: candidate extension has no extension factors");
    for (std::size_t i = 0; i < n; ++i)
      if (!(ext.layout()[i] == rho.layout()[i]))
        throw LayoutError("squashed_upper: candidate extension does not start with the input layout");
    const QState ab = marginal_range(ext, 0, n);
    if ((ab.matrix() - rho.matrix()).cwiseAbs().maxCoeff() > 1e-8)
      throw StateError("squashed_upper: candidate extension does not reproduce the input marginal");
    const auto e_dim = ext.layout().total_dim() / rho.layout().total_dim();
    search.consider(search.with_e(ext.matrix(), e_dim), "candidate");
  }

  // Channels on the purifying system.
  const QState pure = purify(rho);
  const Eigen::Index r = static_cast<Eigen::Index>(pure.layout()[pure.layout().size() - 1].dim);
  Matrix psi_mat(d, r);
  {
    const Vector psi = pure.dominant_vector();
    for (Eigen::Index x = 0; x < d; ++x)
      for (Eigen::Index k = 0; k < r; ++k) psi_mat(x, k) = psi(x * r + k);
  }
  Rng rng(options.seed);
  constexpr std::size_t kRandomDraws = 24;
  const auto max_e = static_cast<Eigen::Index>(options.max_ext_dim);
  Matrix best_g;
  Eigen::Index best_e = 0;
  double best_v = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < kRandomDraws && !search.exhausted(); ++t) {
    const Eigen::Index e_dim = max_e > 1 ? 2 + static_cast<Eigen::Index>(t) % (max_e - 1) : 1;
    Matrix g = linalg::gaussian_matrix(e_dim * r, r, rng);
    const Matrix m = extension_from_isometry(psi_mat, linalg::polar_isometry(g), e_dim);
    const double v = search.consider(search.with_e(m, static_cast<std::size_t>(e_dim)), "isometry");
    if (v < best_v) {
      best_v = v;
      best_g = std::move(g);
      best_e = e_dim;
    }
  }
  if (best_g.size() == 0) return search.best();

  // Coordinate perturbation with a shrinking step.
  std::uniform_int_distribution<Eigen::Index> pick(0, 2 * best_g.size() - 1);
  double step = 0.5;
  std::size_t misses = 0;
  const std::size_t patience = static_cast<std::size_t>(2 * best_g.size());
  while (!search.exhausted()) {
    const Eigen::Index coord = pick(rng);
    const bool imag = coord >= best_g.size();
    const Eigen::Index flat = imag ? coord - best_g.size() : coord;
    const double sign = (misses % 2 == 0) ? 1.0 : -1.0;
    Matrix g = best_g;
    g.data()[flat] += imag ? Complex(0, sign * step) : Complex(sign * step, 0);
    const Matrix m = extension_from_isometry(psi_mat, linalg::polar_isometry(g), best_e);
    const double v = search.consider(search.with_e(m, static_cast<std::size_t>(best_e)), "refined");
    if (v < best_v) {
      best_v = v;
      best_g = std::move(g);
      misses = 0;
    } else if (++misses >= patience) {
      step *= 0.5;
      misses = 0;
    }
  }
  return search.best();
}

RateBoundReport rate_bound_report(const QState& rho, const QState& sigma, const SquashedOptions& options) {
  RateBoundReport report;
  if (rho.is_pure()) {
    report.esq_rho_upper = entanglement_entropy(rho);
    report.rho_exact = true;
    report.notes.push_back("rho pure: E_sq(rho) equals its entanglement entropy");
  } else {
    const auto bound = squashed_upper(rho, options);
    report.esq_rho_upper = bound.value;
    report.notes.push_back("rho mixed: E_sq(rho) bounded by extension search (" + std::to_string(bound.evaluations) +
                           " candidates, best from " + bound.origin + ")");
  }
  if (sigma.is_pure()) {
    report.esq_sigma_lower_proxy = entanglement_entropy(sigma);
    report.sigma_exact = true;
  } else {
    const auto ed = hashing_bounds(sigma);
    const auto flipped = hashing_bounds(sigma, Bipartition{{sigma.layout()[sigma.layout().size() - 1].party}});
    report.esq_sigma_lower_proxy = std::max({0.0, ed.lower, flipped.lower});
    report.notes.push_back("sigma mixed: denominator is the hashing lower bound on E_d, not E_sq itself");
  }
  if (!(report.esq_sigma_lower_proxy > 1e-12))
    throw DivergentRateError("rate bound diverges: no positive lower bound on E_sq(sigma)");
  report.ratio_upper = report.esq_rho_upper / report.esq_sigma_lower_proxy;
  return report;
}

// ---------------------------------------------------------------------------
// Decoupling

double decoupling_bound(double epsilon) { return epsilon + 6.0 * std::sqrt(epsilon / 2.0); }

DecouplingResult decoupling_check(const QState& mu_sc, const QState& phi) {
  if (!phi.is_pure()) throw StateError("decoupling_check: target is not pure");
  const auto ns = phi.layout().size();
  const auto& layout = mu_sc.layout();
  if (layout.size() < ns) throw LayoutError("decoupling_check: system layout longer than the joint layout");
  for (std::size_t i = 0; i < ns; ++i)
    if (!(layout[i] == phi.layout()[i]))
      throw LayoutError("decoupling_check: joint layout does not start with the target layout");
  const QState mu_s = marginal_range(mu_sc, 0, ns);
  const QState mu_c = marginal_range(mu_sc, ns, layout.size() - ns);
  DecouplingResult r;
  r.epsilon = trace_norm_dist(mu_s, phi);
  r.lhs = trace_norm_dist(mu_sc, tensor(phi, mu_c));
  r.rhs = decoupling_bound(r.epsilon);
  r.pass = r.lhs < r.rhs + kDecouplingSlack;
  return r;
}

DecouplingSweep decoupling_monte_carlo(std::size_t samples, std::uint64_t seed, double eps_max) {
  const SystemLayout s_layout = SystemLayout::bipartite(2, 2);
  const SystemLayout c_layout = SystemLayout::bipartite(2, 2);
  const SystemLayout sc = s_layout.concat(c_layout);
  const auto ds = static_cast<Eigen::Index>(s_layout.total_dim());
  const auto dc = static_cast<Eigen::Index>(c_layout.total_dim());
  const Eigen::Index d = ds * dc;
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<Eigen::Index> rank_pick(1, d);
  DecouplingSweep sweep;
  while (sweep.samples.size() < samples) {
    ++sweep.attempts;
    const Vector phi = linalg::gaussian_matrix(ds, 1, rng).col(0).normalized();
    const Vector cat = linalg::gaussian_matrix(dc, 1, rng).col(0).normalized();
    const Vector noise = linalg::gaussian_matrix(d, 1, rng).col(0).normalized();
    const double eta = 0.6 * unit(rng);
    const double w = 0.3 * unit(rng);
    const Matrix g = linalg::gaussian_matrix(d, rank_pick(rng), rng);
    const Vector v = (linalg::kron(phi, cat) + eta * noise).normalized();
    Matrix junk = g * g.adjoint();
    junk /= junk.trace().real();
    const QState mu(sc, (1.0 - w) * (v * v.adjoint()) + w * junk);
    const QState target = QState::pure(s_layout, phi);
    const auto r = decoupling_check(mu, target);
    if (!(r.epsilon < eps_max)) continue;
    if (!r.pass) ++sweep.violations;
    sweep.samples.push_back(r);
  }
  return sweep;
}

// ---------------------------------------------------------------------------
// Superadditive composition

SuperadditiveResult compose_superadditive(const LoccProtocol& lambda1, const LoccProtocol& lambda2, const QState& mu12,
                                          const QState& phi, double epsilon, std::size_t copies) {
  if (!(epsilon > 0 && epsilon < 1)) throw std::invalid_argument("compose_superadditive: epsilon must lie in (0, 1)");
  if (copies == 0) throw std::invalid_argument("compose_superadditive: need at least one copy");
  if (!phi.is_pure()) throw StateError("compose_superadditive: target is not pure");
  const auto& in1 = lambda1.input_layout();
  const auto& in2 = lambda2.input_layout();
  if (in1.size() % copies || in2.size() % copies)
    throw LayoutError("compose_superadditive: protocol inputs are not n copies of a system");
  const auto n1 = in1.size() / copies, n2 = in2.size() / copies;
  if (mu12.layout().size() != n1 + n2)
    throw LayoutError("compose_superadditive: joint state does not split into the protocols' systems");
  const QState mu1 = marginal_range(mu12, 0, n1);
  const QState mu2 = marginal_range(mu12, n1, n2);
  if (!(mu1.layout().repeat(copies) == in1) || !(mu2.layout().repeat(copies) == in2))
    throw LayoutError("compose_superadditive: marginal layouts do not match the protocol inputs");

  auto target_copies = [&](const SystemLayout& out) {
    const auto np = phi.layout().size();
    if (out.size() % np || !(phi.layout().repeat(out.size() / np) == out))
      throw LayoutError("compose_superadditive: protocol output is not copies of the target");
    return tensor_power(phi, out.size() / np);
  };

  SuperadditiveResult r;
  r.epsilon = epsilon;
  r.budget = epsilon * epsilon / 100.0;
  const Channel c1 = flatten(lambda1);
  const Channel c2 = flatten(lambda2);
  r.error_first = trace_norm_dist(apply(c1, tensor_power(mu1, copies)), target_copies(c1.output));
  r.error_second = trace_norm_dist(apply(c2, tensor_power(mu2, copies)), target_copies(c2.output));
  if (!(r.error_first < r.budget) || !(r.error_second < r.budget))
    throw PreconditionError("compose_superadditive: per-side errors " + std::to_string(r.error_first) + ", " +
                            std::to_string(r.error_second) + " exceed the budget eps^2/100 = " + std::to_string(r.budget));

  // (μ^{S1S2})^{⊗n} reordered to S1^{⊗n} S2^{⊗n}.
  const QState joint = tensor_power(mu12, copies);
  std::vector<std::size_t> order;
  for (std::size_t c = 0; c < copies; ++c)
    for (std::size_t i = 0; i < n1; ++i) order.push_back(c * (n1 + n2) + i);
  for (std::size_t c = 0; c < copies; ++c)
    for (std::size_t i = 0; i < n2; ++i) order.push_back(c * (n1 + n2) + n1 + i);
  const QState out = apply(tensor(c1, c2), permute(joint, order));
  r.combined_error = trace_norm_dist(out, target_copies(out.layout()));
  r.pass = r.combined_error < epsilon;
  return r;
}

}  // namespace corrcat
