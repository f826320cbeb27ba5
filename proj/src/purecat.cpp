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
#include <corrcat/purecat.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace corrcat {

namespace {

std::vector<double> partial_sums(const SchmidtVector& p) {
  std::vector<double> out(p.size());
  std::partial_sum(p.probs().begin(), p.probs().end(), out.begin());
  return out;
}

// Permutation σ of {0..d-1} as the unitary Σ_i |σ(i)⟩⟨i|.
Matrix permutation_unitary(const std::vector<std::size_t>& sigma) {
  const auto d = static_cast<Eigen::Index>(sigma.size());
  Matrix u = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) u(static_cast<Eigen::Index>(sigma[static_cast<std::size_t>(i)]), i) = 1;
  return u;
}

}  // namespace

MajorizationReport majorizes(const SchmidtVector& target, const SchmidtVector& source) {
  const std::size_t n = std::max(target.size(), source.size());
  MajorizationReport r;
  r.target_partial_sums = partial_sums(target.padded(n));
  r.source_partial_sums = partial_sums(source.padded(n));
  for (std::size_t k = 0; k < n; ++k)
    if (r.target_partial_sums[k] < r.source_partial_sums[k] - kMajorizationTol) {
      r.violated_index = k + 1;
      break;
    }
  r.convertible = !r.violated_index;
  return r;
}

SchmidtVector tensor(const SchmidtVector& a, const SchmidtVector& b) {
  std::vector<double> out;
  out.reserve(a.size() * b.size());
  for (double x : a.probs())
    for (double y : b.probs()) out.push_back(x * y);
  // Renormalize away the rounding in the products.
  const double sum = std::accumulate(out.begin(), out.end(), 0.0);
  for (double& x : out) x /= sum;
  return SchmidtVector(std::move(out));
}

MajorizationReport catalytic_convertible(const SchmidtVector& source, const SchmidtVector& target,
                                         const SchmidtVector& catalyst) {
  return majorizes(tensor(target, catalyst), tensor(source, catalyst));
}

QState canonical_pure_state(const SchmidtVector& p, std::size_t dim) {
  if (dim == 0) dim = p.size();
  if (p.rank() > dim) throw LayoutError("Schmidt rank exceeds the local dimension");
  if (dim * dim > kMaxTotalDim) throw DimensionCapError("canonical state exceeds the dimension cap");
  const auto d = static_cast<Eigen::Index>(dim);
  Vector psi = Vector::Zero(d * d);
  for (Eigen::Index i = 0; i < d && static_cast<std::size_t>(i) < p.size(); ++i)
    psi(i * d + i) = std::sqrt(p[static_cast<std::size_t>(i)]);
  return QState::pure(SystemLayout::bipartite(dim, dim), psi);
}

PermutationMixture permutation_mixture(const SchmidtVector& target, const SchmidtVector& source) {
  const auto report = majorizes(target, source);
  if (!report.convertible)
    throw NotConvertibleError("source is not majorized by target (partial sum " + std::to_string(*report.violated_index) +
                              " fails)");
  const std::size_t n = std::max(target.size(), source.size());
  std::vector<double> y = target.padded(n).probs();
  const std::vector<double> x = source.padded(n).probs();

  // Sequence of T-transforms y ← λy + (1−λ)Q_{jk}y, each fixing a coordinate.
  struct TTransform {
    std::size_t j, k;
    double lambda;
  };
  std::vector<TTransform> steps;
  constexpr double kDone = 1e-15;
  for (std::size_t guard = 0; guard < n; ++guard) {
    std::optional<std::size_t> j;
    for (std::size_t i = 0; i < n; ++i)
      if (y[i] - x[i] > kDone) j = i;
    if (!j) break;
    std::size_t k = *j + 1;
    while (k < n && !(x[k] - y[k] > kDone)) ++k;
    if (k == n) break;
    const double delta = std::min(y[*j] - x[*j], x[k] - y[k]);
    steps.push_back({*j, k, 1.0 - delta / (y[*j] - y[k])});
    y[*j] -= delta;
    y[k] += delta;
  }

  std::vector<std::size_t> identity(n);
  std::iota(identity.begin(), identity.end(), 0);
  std::map<std::vector<std::size_t>, double> terms{{identity, 1.0}};
  for (const auto& t : steps) {
    std::map<std::vector<std::size_t>, double> next;
    for (const auto& [sigma, w] : terms) {
      if (t.lambda > 0) next[sigma] += w * t.lambda;
      if (t.lambda < 1) {
        auto swapped = sigma;
        std::swap(swapped[t.j], swapped[t.k]);
        next[swapped] += w * (1.0 - t.lambda);
      }
    }
    terms = std::move(next);
  }
  PermutationMixture out;
  for (const auto& [sigma, w] : terms) {
    if (w < 1e-16) continue;
    out.weights.push_back(w);
    out.permutations.push_back(sigma);
  }
  return out;
}

LoccProtocol synthesize_pure_protocol(const SchmidtVector& source, const SchmidtVector& target) {
  const auto mix = permutation_mixture(target, source);
  const std::size_t n = std::max(target.size(), source.size());
  if (n * n > kMaxTotalDim) throw DimensionCapError("synthesized protocol exceeds the dimension cap");
  const auto d = static_cast<Eigen::Index>(n);
  const auto x = source.padded(n).probs();
  const auto y = target.padded(n).probs();
  const SystemLayout layout = SystemLayout::bipartite(n, n);

  // Alice: K_j = √p_j U_j diag(√(y∘σ_j) / √x); Bob then applies U_j.
  std::vector<Outcome> outcomes;
  std::vector<LoccProtocol> branches;
  Matrix null_space = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    if (x[static_cast<std::size_t>(i)] <= 0) null_space(i, i) = 1;
  for (std::size_t j = 0; j < mix.weights.size(); ++j) {
    const auto& sigma = mix.permutations[j];
    Matrix m = Matrix::Zero(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
      const double xi = x[static_cast<std::size_t>(i)];
      if (xi > 0) m(i, i) = std::sqrt(mix.weights[j] * y[sigma[static_cast<std::size_t>(i)]] / xi);
    }
    const Matrix u = permutation_unitary(sigma);
    outcomes.push_back({"m" + std::to_string(j), {u * m}});
    LoccProtocol fix(layout);
    if (!u.isIdentity()) fix.local_unitary(1, {1}, u);
    branches.push_back(std::move(fix));
  }
  // Rounding leaves Σ K†K slightly off; fold the defect into a final outcome.
  Matrix completeness = Matrix::Zero(d, d);
  for (const auto& o : outcomes) completeness += o.kraus.front().adjoint() * o.kraus.front();
  const Matrix rest = Matrix::Identity(d, d) - completeness;
  if (null_space.cwiseAbs().maxCoeff() > 0 || rest.cwiseAbs().maxCoeff() > 1e-14) {
    outcomes.push_back({"rest", {linalg::psd_sqrt(rest)}});
    branches.emplace_back(layout);
  }
  LoccProtocol p(layout);
  p.local(0, {0}, Instrument(std::move(outcomes)), std::move(branches));
  return p;
}

RateInterval pure_target_rate(const QState& rho, const SchmidtVector& phi) {
  const double s_phi = phi.entropy();
  if (!(s_phi > kEntropyCutoff)) throw DivergentRateError("target has no entanglement: the rate diverges");
  if (rho.is_pure()) {
    const double e = entanglement_entropy(rho) / s_phi;
    return {e, e, true};
  }
  const auto b = hashing_bounds(rho);
  return {std::max(0.0, b.lower) / s_phi, b.upper / s_phi, false};
}

}  // namespace corrcat
