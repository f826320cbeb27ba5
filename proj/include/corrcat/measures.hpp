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

#include <corrcat/locc.hpp>
#include <corrcat/qstate.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace corrcat {

/// Bounds on distillable entanglement: coherent information below, marginal
/// entropy above. The lower bound is reported raw and may be negative.
struct EdBounds {
  double lower = 0;
  double upper = 0;
};

/// S(ρ^A) − S(ρ^AB) ≤ E_d(ρ) ≤ S(ρ^A). Requires exactly two parties.
EdBounds hashing_bounds(const QState& rho, const Bipartition& cut = {});

/// Party groups of a three-block state.
struct Tripartition {
  std::vector<int> a{0};
  std::vector<int> b{1};
  std::vector<int> e{2};
};

/// I(A;B|E) = S(AE) + S(BE) − S(ABE) − S(E), bits.
double cqmi(const QState& rho_abe, const Tripartition& parts = {});

/// ½ I(A;B) of a bipartite state.
double half_mutual_information(const QState& rho, const Bipartition& cut = {});

struct SquashedOptions {
  std::size_t max_ext_dim = 4;
  /// Number of candidate extensions evaluated.
  std::size_t search_budget = 200;
  std::uint64_t seed = 1;
  /// Extra extensions ρ^{ABE} to try (e.g. a flagged decomposition). Their
  /// leading factors must reproduce the input; the rest are treated as E.
  std::vector<QState> candidate_extensions;
};

/// A searched extension and its ½ I(A;B|E).
struct SquashedBound {
  double value = 0;
  std::size_t extension_dim = 1;
  QState extension_state;
  std::size_t evaluations = 0;
  std::string origin;
};

/// Upper bound on squashed entanglement: min of ½ I(A;B|E) over the trivial
/// extension, the flagged spectral decomposition, the supplied candidates, and
/// channels on the purifying system (random isometries refined by coordinate
/// perturbation). The candidate order does not depend on the budget, so the
/// bound never increases with it.
SquashedBound squashed_upper(const QState& rho, const SquashedOptions& options = {});

/// E_sq(ρ)/E_sq(σ) bound on marginal (catalytic) rates.
struct RateBoundReport {
  double esq_rho_upper = 0;
  double esq_sigma_lower_proxy = 0;
  double ratio_upper = 0;
  /// ρ pure: the numerator is the exact entanglement entropy.
  bool rho_exact = false;
  /// σ pure: the denominator is exact; otherwise it is the hashing lower bound.
  bool sigma_exact = false;
  std::vector<std::string> notes;
};

/// Throws DivergentRateError when the denominator is not positive.
RateBoundReport rate_bound_report(const QState& rho, const QState& sigma, const SquashedOptions& options = {});

/// ε + 6√(ε/2).
double decoupling_bound(double epsilon);

struct DecouplingResult {
  double epsilon = 0;  ///< ‖μ^S − φ‖₁
  double lhs = 0;      ///< ‖μ^{SC} − φ ⊗ μ^C‖₁
  double rhs = 0;      ///< decoupling_bound(epsilon)
  bool pass = false;
};

/// Round-off allowance in the decoupling comparison (matters only when ε ≈ 0).
inline constexpr double kDecouplingSlack = 1e-12;

/// `phi` is a pure state on the leading factors of `mu_sc`; the rest is C.
/// pass = lhs < rhs (+ kDecouplingSlack).
DecouplingResult decoupling_check(const QState& mu_sc, const QState& phi);

struct DecouplingSweep {
  std::vector<DecouplingResult> samples;
  std::size_t violations = 0;
  std::size_t attempts = 0;
};

/// Seeded random near-product states μ^{SC} on two qubits S ⊗ two qubits C,
/// post-selected on ε < eps_max, each run through decoupling_check.
DecouplingSweep decoupling_monte_carlo(std::size_t samples, std::uint64_t seed, double eps_max = 0.5);

struct SuperadditiveResult {
  double epsilon = 0;
  double budget = 0;  ///< ε²/100
  double error_first = 0;
  double error_second = 0;
  double combined_error = 0;
  bool pass = false;  ///< combined_error < ε
};

/// Runs Λ₁ ⊗ Λ₂ on n copies of a correlated μ^{S₁S₂}. Both sides are first
/// verified to reach φ^{⊗m_i} within ε²/100 from their own marginals
/// (PreconditionError otherwise). Λ_i acts on n copies of S_i; μ12 lists S₁'s
/// factors before S₂'s.
SuperadditiveResult compose_superadditive(const LoccProtocol& lambda1, const LoccProtocol& lambda2, const QState& mu12,
                                          const QState& phi, double epsilon, std::size_t copies = 1);

}  // namespace corrcat
