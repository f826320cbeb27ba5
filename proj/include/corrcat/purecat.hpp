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

inline constexpr double kMajorizationTol = 1e-12;

struct MajorizationReport {
  bool convertible = false;
  /// First (1-based) k with Σ_{i≤k} target_i < Σ_{i≤k} source_i.
  std::optional<std::size_t> violated_index;
  std::vector<double> target_partial_sums;
  std::vector<double> source_partial_sums;
};

/// Nielsen test: source → target by LOCC iff target majorizes source.
MajorizationReport majorizes(const SchmidtVector& target, const SchmidtVector& source);

/// Sorted spectrum of a ⊗ b.
SchmidtVector tensor(const SchmidtVector& a, const SchmidtVector& b);

MajorizationReport catalytic_convertible(const SchmidtVector& source, const SchmidtVector& target,
                                         const SchmidtVector& catalyst);

/// Σ_i √p_i |ii⟩ on bipartite(dim, dim); dim = 0 means p.size().
QState canonical_pure_state(const SchmidtVector& p, std::size_t dim = 0);

/// Weights p_j and permutations σ_j with source_i = Σ_j p_j target_{σ_j(i)}.
struct PermutationMixture {
  std::vector<double> weights;
  std::vector<std::vector<std::size_t>> permutations;
};

PermutationMixture permutation_mixture(const SchmidtVector& target, const SchmidtVector& source);

/// One-way LOCC protocol on bipartite(d, d), d = max length, taking the
/// canonical source state to the canonical target state.
LoccProtocol synthesize_pure_protocol(const SchmidtVector& source, const SchmidtVector& target);

struct RateInterval {
  double lower = 0;
  double upper = 0;
  bool exact = false;
};

RateInterval pure_target_rate(const QState& rho, const SchmidtVector& phi);

}  // namespace corrcat
