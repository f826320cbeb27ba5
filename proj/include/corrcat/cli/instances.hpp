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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace corrcat::cli {

/// State specs: singlet, werner:F, schmidt:p1,p2,..., haar:SEED,
/// ginibre:SEED[:RANK], separable:SEED[:TERMS], file:PATH.
QState make_state(std::string_view spec, const std::filesystem::path& base_dir = {});

/// Separable two-qubit state Σ_i p_i a_i ⊗ b_i with its flagged extension
/// Σ_i p_i a_i ⊗ b_i ⊗ |i⟩⟨i| (E owned by party 2).
struct FlaggedSeparable {
  QState state;
  QState extension;
};
FlaggedSeparable separable_state(std::uint64_t seed, std::size_t terms = 3);

/// Protocol specs on n copies of `rho`: identity, cycle, twirl,
/// nielsen:q1,q2,... (first `convert` copies, others untouched),
/// random-locc:SEED[:ROUNDS], file:PATH.
LoccProtocol make_protocol(std::string_view spec, const QState& rho, std::size_t n, std::size_t convert,
                           const std::filesystem::path& base_dir = {});

/// A catalysis instance: Λ on n copies, with the first m outputs aimed at σ.
struct CatalysisInstance {
  std::string name;
  QState rho;
  QState sigma;
  LoccProtocol lambda;
  std::size_t n = 0;
  std::size_t m = 0;
};
std::vector<CatalysisInstance> catalysis_instances();

/// Two-sided conversion instance: Λ_i maps the i-th marginal of μ12 close to φ.
struct SuperaddInstance {
  QState mu12;
  QState phi;
  LoccProtocol lambda1;
  LoccProtocol lambda2;
};
/// Instances with per-side error below ε²/100.
std::vector<SuperaddInstance> superadd_instances(std::size_t count, std::uint64_t seed, double epsilon);

}  // namespace corrcat::cli
