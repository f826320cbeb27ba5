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

#include <optional>
#include <vector>

namespace corrcat {

/// Correlated catalyst for an n-copy protocol Λ and its embedding on S ⊗ C.
///
/// C holds n − 1 system slots and a register of dimension n (party 0). In
/// register block k the slots carry ρ^{⊗(k−1)} ⊗ Γ_{n−k}, where Γ = Λ(ρ^{⊗n})
/// and Γ_i is its marginal on the first i copies.
struct CatalystAssembly {
  std::size_t n = 0;
  QState tau;
  LoccProtocol embedding;
  QState gamma;                        ///< Λ(ρ^{⊗n})
  std::vector<QState> gamma_marginals; ///< Γ_k^{(k)}, k = 1..n
  QState expected_output;              ///< (1/n) Σ_k Γ_k^{(k)}
  double catalyst_residual = 0;        ///< ‖μ^C − τ‖₁ of the embedding
  double system_residual = 0;          ///< ‖μ^S − expected_output‖₁
};

CatalystAssembly build_catalyst(const LoccProtocol& lambda_n, const QState& rho, std::size_t n);

/// Γ_i^{(j)}: copy j (1-based) of the first-i-copies marginal of Γ.
QState gamma_marginal(const QState& gamma, const SystemLayout& copy_layout, std::size_t i, std::size_t j);

struct CatalysisCertificate {
  double epsilon_achieved = 0;  ///< ‖μ^S − σ‖₁
  double catalyst_drift = 0;    ///< ‖μ^C − τ‖₁
  double correlation = 0;       ///< ‖μ^{SC} − μ^S ⊗ μ^C‖₁
};

CatalysisCertificate verify_catalysis(const LoccProtocol& lambda, const QState& tau, const QState& rho,
                                      const QState& sigma);

struct ReductionCertificate {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<double> per_marginal_errors;
  double rate_slack = 0;  ///< m / n

  double max_error() const;
};

ReductionCertificate verify_marginal_reduction(const LoccProtocol& lambda, const QState& rho, const QState& sigma,
                                               std::size_t n, std::size_t m);

struct ReuseOptions {
  /// Track the full joint state of all outputs and the catalyst (≤ 3 copies).
  bool track_joint = false;
  /// Exact catalyst to measure drift against; drift is empty without it.
  std::optional<QState> exact_catalyst;
  /// Copies spent producing τ_ε, counted in the certificate's n.
  std::size_t catalyst_copies = 0;
};

struct ReuseResult {
  std::vector<QState> marginals;        ///< ν^{S_i}
  std::optional<QState> joint;          ///< S_1 … S_copies ⊗ C when tracked
  ReductionCertificate certificate;
  std::vector<double> catalyst_drift;   ///< ‖μ_i^C − τ‖₁ after each step
  QState final_catalyst;
};

inline constexpr std::size_t kMaxJointCopies = 3;

ReuseResult iterate_reuse(const LoccProtocol& lambda, const QState& tau_eps, const QState& rho, const QState& sigma,
                          std::size_t copies, const ReuseOptions& options = {});

struct DecoupledCertificate {
  CatalysisCertificate catalysis;
  double decoupling_lhs = 0;  ///< ‖μ^{SC} − φ ⊗ μ^C‖₁
  double bound = 0;           ///< ε + 6√(ε/2), ε = epsilon_achieved
  bool pass = false;
};

DecoupledCertificate decoupled_catalysis_check(const LoccProtocol& lambda, const QState& tau, const QState& rho,
                                               const QState& phi);

/// Λ followed by Bob-side depolarizing noise of strength p on each of his
/// catalyst factors; breaks the fixed point of τ.
LoccProtocol damage_catalyst(const LoccProtocol& lambda, std::size_t system_factors, double p);

}  // namespace corrcat
