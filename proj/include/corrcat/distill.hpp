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
#include <vector>

namespace corrcat {

/// F|ψ⁻⟩⟨ψ⁻| + (1−F)/3 (1 − |ψ⁻⟩⟨ψ⁻|) on bipartite(2, 2), F ∈ [1/4, 1].
QState werner_state(double fidelity);
/// |ψ⁻⟩ = (|01⟩ − |10⟩)/√2.
QState singlet();
/// ⟨ψ⁻|ρ|ψ⁻⟩ for a two-qubit state.
double singlet_fidelity(const QState& rho);

struct RecurrenceOutcome {
  double fidelity = 0;
  double success_probability = 0;
};

/// Closed-form recurrence round on two Werner copies.
RecurrenceOutcome recurrence_step(double fidelity);

/// Two-copy recurrence round as an LOCC protocol on (A1, B1, A2, B2),
/// returning (A1, B1) plus a transcript factor with four outcome paths.
LoccProtocol recurrence_protocol();

/// Brute-force round: runs recurrence_protocol on two Werner copies,
/// post-selects agreeing outcomes and twirls.
struct RecurrenceSimulation {
  RecurrenceOutcome outcome;
  QState output;  ///< normalized, twirled
};
RecurrenceSimulation recurrence_simulation(double fidelity);

/// Shared-randomness U ⊗ U twirl over 12 unitaries; maps any two-qubit
/// state to the Werner state of equal singlet fidelity.
LoccProtocol twirl_protocol();
Channel twirl_channel();

struct DistillRound {
  double fidelity_before = 0;
  double fidelity_after = 0;
  double success_probability = 0;
};

struct DistillRun {
  std::vector<DistillRound> rounds;
  double copies_consumed = 1;  ///< expected Werner copies per output pair
};

DistillRun distill_to(double target_fidelity, double initial_fidelity);

/// Sampled copy count per output pair, averaged over `trials`.
double distill_monte_carlo(double target_fidelity, double initial_fidelity, std::size_t trials, std::uint64_t seed);

struct SweepRow {
  double f_in = 0;
  double f_out = 0;
  double p = 0;
  double expected_copies = 0;  ///< 2/p for one round
};

std::vector<SweepRow> recurrence_sweep(double f_min, double f_max, std::size_t points);

struct ApproxCatalyst {
  QState state;
  double epsilon = 0;  ///< ‖τ_ε − τ‖₁
};

/// τ prepared by Alice; every factor of `receiver` is teleported through
/// teleport_channel(F, dim).
ApproxCatalyst synthesize_tau_eps(const QState& tau, double resource_fidelity, int receiver = 1);

/// Smallest resource fidelity whose τ_ε lies within `epsilon` of τ (bisection).
double resource_fidelity_for_epsilon(const QState& tau, double epsilon, int receiver = 1);

}  // namespace corrcat
