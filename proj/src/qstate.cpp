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

#include <corrcat/qstate.hpp>
#include <corrcat/random.hpp>

#include <algorithm>
#include <iostream>
#include <limits>
#include <numeric>
#include <sstream>

namespace corrcat {

namespace {

void default_warning(const std::string& message) { std::cerr << "corrcat warning: " << message << '\n'; }

WarningHandler g_warning_handler = &default_warning;

std::vector<std::size_t> strides_of(const SystemLayout& layout) {
  std::vector<std::size_t> strides(layout.size(), 1);
  for (std::size_t i = layout.size(); i-- > 1;) strides[i - 1] = strides[i] * layout[i].dim;
  return strides;
}

}  // namespace

std::vector<Eigen::Index> basis_offsets(const SystemLayout& layout, std::span<const std::size_t> indices) {
  const auto strides = strides_of(layout);
  std::vector<Eigen::Index> out{0};
  for (std::size_t idx : indices) {
    std::vector<Eigen::Index> next;
    next.reserve(out.size() * layout[idx].dim);
    for (Eigen::Index base : out)
      for (std::size_t d = 0; d < layout[idx].dim; ++d)
        next.push_back(base + static_cast<Eigen::Index>(d * strides[idx]));
    out = std::move(next);
  }
  return out;
}

namespace {

std::vector<std::size_t> complement(std::size_t n, std::span<const std::size_t> chosen) {
  std::vector<bool> taken(n, false);
  for (auto i : chosen) taken[i] = true;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i)
    if (!taken[i]) rest.push_back(i);
  return rest;
}

}  // namespace

WarningHandler set_warning_handler(WarningHandler handler) {
  auto previous = g_warning_handler;
  g_warning_handler = handler ? handler : &default_warning;
  return previous;
}

void warn(const std::string& message) { g_warning_handler(message); }

// ---------------------------------------------------------------------------
// SystemLayout

SystemLayout::SystemLayout(std::vector<Factor> factors) : factors_(std::move(factors)) {
  for (const auto& f : factors_) {
    if (f.dim == 0) throw LayoutError("layout factor with dimension 0");
    if (f.party < 0) throw LayoutError("layout factor with negative party id");
    if (total_dim_ > std::numeric_limits<std::size_t>::max() / f.dim)
      throw DimensionCapError("layout dimension overflows");
    total_dim_ *= f.dim;
  }
}

SystemLayout SystemLayout::bipartite(std::size_t dim_a, std::size_t dim_b) {
  return SystemLayout({{0, dim_a}, {1, dim_b}});
}

std::size_t SystemLayout::dim_of(std::span<const std::size_t> indices) const {
  std::size_t d = 1;
  for (auto i : indices) {
    if (i >= factors_.size()) throw LayoutError("factor index out of range");
    d *= factors_[i].dim;
  }
  return d;
}

std::vector<std::size_t> SystemLayout::factors_of(std::span<const int> parties) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (std::find(parties.begin(), parties.end(), factors_[i].party) != parties.end()) out.push_back(i);
  return out;
}

std::vector<int> SystemLayout::parties() const {
  std::vector<int> out;
  for (const auto& f : factors_)
    if (std::find(out.begin(), out.end(), f.party) == out.end()) out.push_back(f.party);
  return out;
}

int SystemLayout::max_party() const {
  int m = -1;
  for (const auto& f : factors_) m = std::max(m, f.party);
  return m;
}

SystemLayout SystemLayout::concat(const SystemLayout& other) const {
  auto f = factors_;
  f.insert(f.end(), other.factors_.begin(), other.factors_.end());
  return SystemLayout(std::move(f));
}

SystemLayout SystemLayout::select(std::span<const std::size_t> indices) const {
  std::vector<Factor> f;
  for (auto i : indices) {
    if (i >= factors_.size()) throw LayoutError("factor index out of range");
    f.push_back(factors_[i]);
  }
  return SystemLayout(std::move(f));
}

SystemLayout SystemLayout::without(std::span<const std::size_t> indices) const {
  check_factor_indices(*this, indices);
  const auto rest = complement(factors_.size(), indices);
  return select(rest);
}

SystemLayout SystemLayout::repeat(std::size_t copies) const {
  std::vector<Factor> f;
  for (std::size_t c = 0; c < copies; ++c) f.insert(f.end(), factors_.begin(), factors_.end());
  return SystemLayout(std::move(f));
}

std::string SystemLayout::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) os << ' ';
    os << 'p' << factors_[i].party << ':' << factors_[i].dim;
  }
  os << ']';
  return os.str();
}

void check_factor_indices(const SystemLayout& layout, std::span<const std::size_t> indices) {
  std::vector<bool> seen(layout.size(), false);
  for (auto i : indices) {
    if (i >= layout.size())
      throw LayoutError("factor index " + std::to_string(i) + " out of range for " + layout.to_string());
    if (seen[i]) throw LayoutError("factor index " + std::to_string(i) + " repeated");
    seen[i] = true;
  }
}

// ---------------------------------------------------------------------------
// QState

QState::QState(SystemLayout layout, Matrix rho, Check check) : layout_(std::move(layout)), rho_(std::move(rho)) {
  if (layout_.total_dim() > kMaxTotalDim)
    throw DimensionCapError("state dimension " + std::to_string(layout_.total_dim()) + " exceeds cap " +
                            std::to_string(kMaxTotalDim));
  const auto d = static_cast<Eigen::Index>(layout_.total_dim());
  if (rho_.rows() != d || rho_.cols() != d)
    throw LayoutError("matrix of size " + std::to_string(rho_.rows()) + "x" + std::to_string(rho_.cols()) +
                      " does not match layout " + layout_.to_string());
  if (!rho_.allFinite()) throw StateError("density matrix has non-finite entries");
  const double herm = linalg::hermiticity_defect(rho_);
  if (herm > kHermitianTol) throw StateError("matrix not Hermitian (defect " + std::to_string(herm) + ")");
  rho_ = 0.5 * (rho_ + rho_.adjoint()).eval();
  const double tr = rho_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) throw StateError("trace " + std::to_string(tr) + " differs from 1");
  if (check == Check::kLight) return;

  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig >= -kPsdTol) return;
  if (min_eig < -kPsdClipTol)
    throw StateError("matrix not positive semidefinite (min eigenvalue " + std::to_string(min_eig) + ")");
  warn("clipping negative eigenvalue " + std::to_string(min_eig));
  RealVector clipped = es.eigenvalues().cwiseMax(0.0);
  clipped /= clipped.sum();
  rho_ = es.eigenvectors() * clipped.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  rho_ = 0.5 * (rho_ + rho_.adjoint()).eval();
}

QState QState::pure(SystemLayout layout, const Vector& psi) {
  const double norm = psi.norm();
  if (!(norm > 0)) throw StateError("zero state vector");
  if (psi.size() != static_cast<Eigen::Index>(layout.total_dim()))
    throw LayoutError("state vector length does not match layout " + layout.to_string());
  const Vector v = psi / norm;
  return QState(std::move(layout), v * v.adjoint(), Check::kLight);
}

QState QState::basis(SystemLayout layout, std::size_t index) {
  const auto d = static_cast<Eigen::Index>(layout.total_dim());
  if (static_cast<Eigen::Index>(index) >= d) throw LayoutError("basis index out of range");
  return pure(std::move(layout), linalg::basis_vector(d, static_cast<Eigen::Index>(index)));
}

QState QState::maximally_mixed(SystemLayout layout) {
  const auto d = static_cast<Eigen::Index>(layout.total_dim());
  Matrix m = Matrix::Identity(d, d) / static_cast<double>(d);
  return QState(std::move(layout), std::move(m), Check::kLight);
}

RealVector QState::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double QState::purity() const { return (rho_ * rho_).trace().real(); }

bool QState::is_pure(double tol) const { return eigenvalues().maxCoeff() >= 1.0 - tol; }

Vector QState::dominant_vector() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_);
  return es.eigenvectors().col(rho_.rows() - 1);
}

// ---------------------------------------------------------------------------
// SchmidtVector

SchmidtVector::SchmidtVector(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw StateError("empty Schmidt vector");
  double sum = 0;
  for (double p : probs_) {
    if (!std::isfinite(p) || p < 0) throw StateError("Schmidt coefficients must be finite and non-negative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) throw StateError("Schmidt coefficients sum to " + std::to_string(sum));
  std::stable_sort(probs_.begin(), probs_.end(), std::greater<>());
}

SchmidtVector SchmidtVector::padded(std::size_t length) const {
  SchmidtVector out = *this;
  if (out.probs_.size() < length) out.probs_.resize(length, 0.0);
  return out;
}

std::size_t SchmidtVector::rank(double tol) const {
  return static_cast<std::size_t>(std::count_if(probs_.begin(), probs_.end(), [tol](double p) { return p > tol; }));
}

double SchmidtVector::entropy() const {
  return linalg::entropy_bits(Eigen::Map<const RealVector>(probs_.data(), static_cast<Eigen::Index>(probs_.size())),
                              kEntropyCutoff);
}

std::vector<std::size_t> Bipartition::a_factors(const SystemLayout& layout) const { return layout.factors_of(side_a); }

std::vector<std::size_t> Bipartition::b_factors(const SystemLayout& layout) const {
  const auto a = a_factors(layout);
  return complement(layout.size(), a);
}

// ---------------------------------------------------------------------------
// Tensor bookkeeping

QState tensor(const QState& a, const QState& b) {
  SystemLayout layout = a.layout().concat(b.layout());
  if (layout.total_dim() > kMaxTotalDim) throw DimensionCapError("tensor product exceeds dimension cap");
  return QState(std::move(layout), linalg::kron(a.matrix(), b.matrix()), QState::Check::kLight);
}

QState tensor_power(const QState& s, std::size_t copies) {
  if (copies == 0) return QState(SystemLayout{}, Matrix::Identity(1, 1), QState::Check::kLight);
  QState out = s;
  for (std::size_t c = 1; c < copies; ++c) out = tensor(out, s);
  return out;
}

QState partial_trace(const QState& s, std::span<const std::size_t> keep) {
  const auto& layout = s.layout();
  check_factor_indices(layout, keep);
  std::vector<std::size_t> kept(keep.begin(), keep.end());
  std::sort(kept.begin(), kept.end());
  const auto traced = complement(layout.size(), kept);
  const auto off_keep = basis_offsets(layout, kept);
  const auto off_trace = basis_offsets(layout, traced);
  const auto dk = static_cast<Eigen::Index>(off_keep.size());
  const Matrix& rho = s.matrix();
  Matrix out = Matrix::Zero(dk, dk);
  for (Eigen::Index b = 0; b < dk; ++b)
    for (Eigen::Index a = 0; a < dk; ++a) {
      Complex acc = 0;
      for (Eigen::Index t : off_trace) acc += rho(off_keep[a] + t, off_keep[b] + t);
      out(a, b) = acc;
    }
  return QState(layout.select(kept), std::move(out), QState::Check::kLight);
}

QState partial_trace(const QState& s, std::initializer_list<std::size_t> keep) {
  return partial_trace(s, std::span<const std::size_t>(keep.begin(), keep.size()));
}

QState trace_out(const QState& s, std::span<const std::size_t> drop) {
  check_factor_indices(s.layout(), drop);
  return partial_trace(s, complement(s.layout().size(), drop));
}

QState marginal_range(const QState& s, std::size_t first, std::size_t count) {
  if (first + count > s.layout().size()) throw LayoutError("marginal range out of bounds");
  std::vector<std::size_t> keep(count);
  std::iota(keep.begin(), keep.end(), first);
  return partial_trace(s, keep);
}

std::vector<Eigen::Index> permutation_index_map(const SystemLayout& layout, std::span<const std::size_t> order) {
  if (order.size() != layout.size()) throw LayoutError("permutation must list every factor");
  check_factor_indices(layout, order);
  return basis_offsets(layout, order);
}

QState permute(const QState& s, std::span<const std::size_t> order) {
  const auto map = permutation_index_map(s.layout(), order);
  const auto d = static_cast<Eigen::Index>(map.size());
  Matrix out(d, d);
  const Matrix& rho = s.matrix();
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index i = 0; i < d; ++i) out(i, j) = rho(map[i], map[j]);
  return QState(s.layout().select(order), std::move(out), QState::Check::kLight);
}

// ---------------------------------------------------------------------------
// Metrics and entropies

namespace {
void require_same_layout(const QState& a, const QState& b, const char* what) {
  if (!(a.layout() == b.layout()))
    throw LayoutError(std::string(what) + ": layouts differ (" + a.layout().to_string() + " vs " +
                      b.layout().to_string() + ")");
}
}  // namespace

double trace_norm_dist(const QState& a, const QState& b) {
  require_same_layout(a, b, "trace_norm_dist");
  return linalg::hermitian_trace_norm(a.matrix() - b.matrix());
}

double fidelity(const QState& a, const QState& b) {
  require_same_layout(a, b, "fidelity");
  // ‖√a √b‖₁ equals Tr√(√a b √a) and avoids a nested square root.
  const Matrix prod = linalg::psd_sqrt(a.matrix()) * linalg::psd_sqrt(b.matrix());
  return std::min(1.0, linalg::trace_norm(prod));
}

double von_neumann_entropy(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
  return std::max(0.0, linalg::entropy_bits(es.eigenvalues(), kEntropyCutoff));
}

double von_neumann_entropy(const QState& s) { return von_neumann_entropy(s.matrix()); }

namespace {
void require_pure(const QState& s, const char* what) {
  if (!s.is_pure(1e-9)) throw StateError(std::string(what) + ": input is not pure");
}
}  // namespace

double entanglement_entropy(const QState& pure, const Bipartition& cut) {
  require_pure(pure, "entanglement_entropy");
  return von_neumann_entropy(partial_trace(pure, cut.a_factors(pure.layout())));
}

SchmidtVector schmidt_decompose(const QState& pure, const Bipartition& cut) {
  require_pure(pure, "schmidt_decompose");
  const auto a = cut.a_factors(pure.layout());
  const auto b = cut.b_factors(pure.layout());
  const auto& side = pure.layout().dim_of(a) <= pure.layout().dim_of(b) ? a : b;
  RealVector ev = partial_trace(pure, side).eigenvalues().cwiseMax(0.0);
  ev /= ev.sum();
  std::vector<double> probs(ev.data(), ev.data() + ev.size());
  // Trailing round-off may leave the sum a few ulps from 1.
  std::sort(probs.begin(), probs.end(), std::greater<>());
  double sum = std::accumulate(probs.begin(), probs.end(), 0.0);
  probs.front() += 1.0 - sum;
  return SchmidtVector(std::move(probs));
}

QState purify(const QState& s) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(s.matrix());
  const auto d = s.dim();
  std::vector<Eigen::Index> support;
  for (Eigen::Index i = d; i-- > 0;)
    if (es.eigenvalues()(i) > 1e-14) support.push_back(i);
  const auto r = static_cast<Eigen::Index>(support.size());
  Vector psi = Vector::Zero(d * r);
  for (Eigen::Index k = 0; k < r; ++k) {
    const Eigen::Index i = support[static_cast<std::size_t>(k)];
    const double w = std::sqrt(es.eigenvalues()(i));
    for (Eigen::Index x = 0; x < d; ++x) psi(x * r + k) += w * es.eigenvectors()(x, i);
  }
  SystemLayout layout = s.layout().concat(SystemLayout({{s.layout().max_party() + 1, static_cast<std::size_t>(r)}}));
  return QState::pure(std::move(layout), psi);
}

QState random_state(const SystemLayout& layout, Ensemble ensemble, std::uint64_t seed, std::size_t ginibre_rank) {
  if (layout.total_dim() > kMaxTotalDim) throw DimensionCapError("random_state exceeds dimension cap");
  Rng rng(seed);
  const auto d = static_cast<Eigen::Index>(layout.total_dim());
  if (ensemble == Ensemble::kHaarPure) return QState::pure(layout, linalg::gaussian_matrix(d, 1, rng).col(0));
  const auto k = ginibre_rank > 0 ? static_cast<Eigen::Index>(ginibre_rank) : d;
  const Matrix g = linalg::gaussian_matrix(d, k, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return QState(layout, std::move(rho));
}

}  // namespace corrcat
