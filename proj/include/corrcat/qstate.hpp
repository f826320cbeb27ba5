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

#pragma once

#include <corrcat/errors.hpp>
#include <corrcat/linalg.hpp>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace corrcat {

/// Largest total dimension a dense state may have.
inline constexpr std::size_t kMaxTotalDim = 4096;

/// Tolerances for the density-matrix invariants.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;
/// Negative eigenvalues above -kPsdClipTol are clipped (with a warning);
/// anything below is rejected.
inline constexpr double kPsdClipTol = 1e-9;
/// Eigenvalues below this count as exactly zero in entropies.
inline constexpr double kEntropyCutoff = 1e-12;

/// One tensor factor: who holds it and how large it is.
struct Factor {
  int party = 0;
  std::size_t dim = 2;

  friend bool operator==(const Factor&, const Factor&) = default;
};

/// Ordered list of tensor factors. Factor order fixes the Kronecker ordering
/// of every matrix bound to the layout (first factor is most significant).
class SystemLayout {
 public:
  SystemLayout() = default;
  explicit SystemLayout(std::vector<Factor> factors);

  /// Two factors: party 0 of dimension `dim_a`, party 1 of dimension `dim_b`.
  static SystemLayout bipartite(std::size_t dim_a, std::size_t dim_b);

  std::size_t size() const { return factors_.size(); }
  bool empty() const { return factors_.empty(); }
  const Factor& operator[](std::size_t i) const { return factors_[i]; }
  const std::vector<Factor>& factors() const { return factors_; }
  std::size_t total_dim() const { return total_dim_; }

  /// Product of the dims of the selected factors.
  std::size_t dim_of(std::span<const std::size_t> indices) const;
  /// Indices of all factors owned by any of `parties`, in layout order.
  std::vector<std::size_t> factors_of(std::span<const int> parties) const;
  /// Distinct parties in order of first appearance.
  std::vector<int> parties() const;
  int max_party() const;

  SystemLayout concat(const SystemLayout& other) const;
  SystemLayout select(std::span<const std::size_t> indices) const;
  SystemLayout without(std::span<const std::size_t> indices) const;
  SystemLayout repeat(std::size_t copies) const;

  std::string to_string() const;

  friend bool operator==(const SystemLayout& a, const SystemLayout& b) {
    return a.factors_ == b.factors_;
  }

 private:
  std::vector<Factor> factors_;
  std::size_t total_dim_ = 1;
};

/// Basis-index offset of every multi-index over the selected factors,
/// enumerated row-major in the order given. Offsets of disjoint factor sets add.
std::vector<Eigen::Index> basis_offsets(const SystemLayout& layout, std::span<const std::size_t> indices);

/// Throws LayoutError unless every index is in range and appears once.
void check_factor_indices(const SystemLayout& layout, std::span<const std::size_t> indices);

/// Density matrix bound to a layout. Always Hermitian, PSD and unit trace to
/// the tolerances above; construction enforces this.
class QState {
 public:
  enum class Check {
    kFull,   ///< Hermiticity, trace and spectrum.
    kLight,  ///< Hermiticity and trace only; for outputs of structure-preserving maps.
  };

  /// The trivial state on the empty layout.
  QState() : rho_(Matrix::Ones(1, 1)) {}
  QState(SystemLayout layout, Matrix rho, Check check = Check::kFull);

  /// |ψ⟩⟨ψ| for a (not necessarily normalized, nonzero) vector.
  static QState pure(SystemLayout layout, const Vector& psi);
  static QState basis(SystemLayout layout, std::size_t index);
  static QState maximally_mixed(SystemLayout layout);

  const SystemLayout& layout() const { return layout_; }
  const Matrix& matrix() const { return rho_; }
  Eigen::Index dim() const { return rho_.rows(); }

  /// Ascending eigenvalues.
  RealVector eigenvalues() const;
  double purity() const;
  /// Largest eigenvalue at least 1 - tol.
  bool is_pure(double tol = 1e-9) const;
  /// Dominant eigenvector (the state vector when pure).
  Vector dominant_vector() const;

 private:
  SystemLayout layout_;
  Matrix rho_;
};

/// Spectrum of a bipartite pure state: non-negative, descending, unit sum.
class SchmidtVector {
 public:
  SchmidtVector() = default;
  /// Sorts descending (stable) and checks non-negativity and unit sum.
  explicit SchmidtVector(std::vector<double> probs);

  const std::vector<double>& probs() const { return probs_; }
  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  /// Padded copy with trailing zeros.
  SchmidtVector padded(std::size_t length) const;
  std::size_t rank(double tol = 1e-14) const;
  double entropy() const;

  friend bool operator==(const SchmidtVector&, const SchmidtVector&) = default;

 private:
  std::vector<double> probs_{1.0};
};

/// Which parties sit on the A side of a bipartite cut.
struct Bipartition {
  std::vector<int> side_a{0};

  std::vector<std::size_t> a_factors(const SystemLayout& layout) const;
  std::vector<std::size_t> b_factors(const SystemLayout& layout) const;
};

QState tensor(const QState& a, const QState& b);
QState tensor_power(const QState& s, std::size_t copies);

/// Reduced state on `keep`; the result lists the kept factors in layout order.
QState partial_trace(const QState& s, std::span<const std::size_t> keep);
QState partial_trace(const QState& s, std::initializer_list<std::size_t> keep);
/// Reduced state on all factors except `drop`.
QState trace_out(const QState& s, std::span<const std::size_t> drop);
/// Reduced state on the given range of factors [first, first + count).
QState marginal_range(const QState& s, std::size_t first, std::size_t count);

/// Reorders factors: factor p of the result is factor order[p] of the input.
QState permute(const QState& s, std::span<const std::size_t> order);
/// Index map behind permute: result basis index -> input basis index.
std::vector<Eigen::Index> permutation_index_map(const SystemLayout& layout,
                                                std::span<const std::size_t> order);

/// ‖a − b‖₁ (no factor ½).
double trace_norm_dist(const QState& a, const QState& b);
/// Tr√(√a b √a); root fidelity.
double fidelity(const QState& a, const QState& b);
/// Bits.
double von_neumann_entropy(const QState& s);
double von_neumann_entropy(const Matrix& rho);
double entanglement_entropy(const QState& pure, const Bipartition& cut = {});
SchmidtVector schmidt_decompose(const QState& pure, const Bipartition& cut = {});

/// Pure state on layout ⊗ reference(dim = rank) whose reference trace is `s`.
/// The reference factor belongs to a fresh party (max party + 1).
QState purify(const QState& s);

enum class Ensemble { kHaarPure, kGinibreMixed };

/// Seeded random state; identical seeds give bit-identical matrices on a given
/// build. Ginibre draws use a square Ginibre matrix unless `ginibre_rank` > 0.
QState random_state(const SystemLayout& layout, Ensemble ensemble, std::uint64_t seed,
                    std::size_t ginibre_rank = 0);

/// Hook for non-fatal numerical warnings (PSD clipping). Default writes to stderr.
using WarningHandler = void (*)(const std::string&);
WarningHandler set_warning_handler(WarningHandler handler);
void warn(const std::string& message);

}  // namespace corrcat
