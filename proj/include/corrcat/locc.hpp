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

#include <corrcat/qstate.hpp>
#include <corrcat/random.hpp>

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace corrcat {

/// Completeness tolerance for trace-preserving operator sets.
inline constexpr double kCompletenessTol = 1e-9;

/// Completely positive map in Kraus form. Each operator is
/// output_dim x input_dim.
struct Channel {
  SystemLayout input;
  SystemLayout output;
  std::vector<Matrix> kraus;

  Channel() = default;
  Channel(SystemLayout in, SystemLayout out, std::vector<Matrix> ops);

  static Channel identity(const SystemLayout& layout);
  static Channel unitary(const SystemLayout& layout, const Matrix& u);

  /// Σ K†K.
  Matrix completeness() const;
  /// ‖Σ K†K − I‖ max-abs.
  double completeness_defect() const;
  bool is_trace_preserving(double tol = kCompletenessTol) const;
};

/// Σ K ρ K† with the output validated as a state.
QState apply(const Channel& c, const QState& s);

/// Applies `c` to the factors `targets` of `s` (in the given order) and the
/// identity elsewhere. When the channel preserves its layout the factor order
/// of `s` is kept; otherwise the untouched factors come first, followed by the
/// channel's output factors.
QState apply_to_factors(const Channel& c, const QState& s, std::span<const std::size_t> targets);

/// second ∘ first.
Channel compose(const Channel& second, const Channel& first);
/// a ⊗ b on the concatenated layouts.
Channel tensor(const Channel& a, const Channel& b);
/// Unnormalized Choi matrix Σ_ij |i⟩⟨j| ⊗ c(|i⟩⟨j|).
Matrix choi(const Channel& c);
/// Minimal Kraus set spanning the same map (eigenvectors of the Choi matrix).
Channel compress(const Channel& c, double tol = 1e-13);
/// Max-abs difference of Choi matrices.
double choi_distance(const Channel& a, const Channel& b);

/// Embeds an operator on `targets` (in that order) into the full layout.
Matrix embed_operator(const Matrix& op, const SystemLayout& layout, std::span<const std::size_t> targets);

// ---------------------------------------------------------------------------
// Instruments and LOCC protocols

/// One measurement outcome: a trace-non-increasing operator set.
struct Outcome {
  std::string label;
  std::vector<Matrix> kraus;
};

/// Outcomes whose summed operator set is trace-preserving. All operators are
/// square on the instrument's local space.
class Instrument {
 public:
  Instrument() = default;
  explicit Instrument(std::vector<Outcome> outcomes);

  static Instrument unitary(const Matrix& u, std::string label = "u");
  /// Projective measurement in the computational basis of a dim-d space.
  static Instrument basis_measurement(std::size_t dim);
  /// Random Haar instrument with `outcomes` outcomes on a dim-d space.
  static Instrument random(std::size_t dim, std::size_t outcomes, Rng& rng);

  std::size_t size() const { return outcomes_.size(); }
  Eigen::Index dim() const { return dim_; }
  const std::vector<Outcome>& outcomes() const { return outcomes_; }
  const Outcome& operator[](std::size_t k) const { return outcomes_[k]; }

 private:
  std::vector<Outcome> outcomes_;
  Eigen::Index dim_ = 0;
};

class LoccProtocol;

/// A local instrument. After the outcome is broadcast, `branches[k]` (if
/// present) runs on outcome k before the enclosing protocol continues.
struct LocalStep {
  int party = 0;
  std::vector<std::size_t> targets;
  Instrument instrument;
  std::vector<LoccProtocol> branches;
};

/// A layout-preserving sub-protocol placed on `targets` (sub-factor i sits on
/// targets[i]).
struct NestedStep {
  std::vector<std::size_t> targets;
  std::vector<LoccProtocol> body;  // exactly one element
};

/// Each owner discards its own factors.
struct DiscardStep {
  std::vector<std::size_t> targets;
};

/// The owner of `factor` appends a locally prepared state at the end.
struct PrepareStep {
  Factor factor;
  Matrix state;
};

using Step = std::variant<LocalStep, NestedStep, DiscardStep, PrepareStep>;

/// Finite LOCC protocol tree. Locality is enforced as steps are added: a local
/// instrument may only touch factors of its acting party, so every protocol
/// that can be built is LOCC by construction.
class LoccProtocol {
 public:
  LoccProtocol() = default;
  explicit LoccProtocol(SystemLayout input);

  const SystemLayout& input_layout() const { return input_; }
  const SystemLayout& output_layout() const { return output_; }
  const std::vector<Step>& steps() const { return steps_; }
  bool empty() const { return steps_.empty(); }

  LoccProtocol& local(int party, std::vector<std::size_t> targets, Instrument instrument,
                      std::vector<LoccProtocol> branches = {});
  LoccProtocol& local_unitary(int party, std::vector<std::size_t> targets, const Matrix& u);
  LoccProtocol& nested(std::vector<std::size_t> targets, LoccProtocol body);
  LoccProtocol& discard(std::vector<std::size_t> targets);
  LoccProtocol& prepare(Factor factor, Matrix state);
  /// Appends all steps of `next`, whose input must equal the current output.
  LoccProtocol& then(const LoccProtocol& next);

  /// Longest chain of local steps along any branch.
  std::size_t depth() const;

 private:
  SystemLayout input_;
  SystemLayout output_;
  std::vector<Step> steps_;
};

struct FlattenOptions {
  /// Append a classical transcript factor (party 0) recording the outcome path.
  bool keep_transcript = false;
};

/// Composite action of the whole tree as one channel.
Channel flatten(const LoccProtocol& p, FlattenOptions options = {});

/// Protocol on a ⊗ b running `a` on the leading factors then `b` on the rest.
/// Both must preserve their layouts.
LoccProtocol tensor(const LoccProtocol& a, const LoccProtocol& b);
LoccProtocol tensor_power(const LoccProtocol& p, std::size_t copies);

/// Measures `register_factor` in its computational basis (non-destructively),
/// broadcasts the outcome k, then runs branches[k]. Every branch acts on
/// `layout` and must agree on its output layout.
LoccProtocol controlled_on_register(const SystemLayout& layout, std::size_t register_factor,
                                    std::vector<LoccProtocol> branches);

/// Moves factor order[p] to position p. Every moved factor must land on a
/// position with the same party and dimension, so each party only permutes its
/// own factors: one local permutation unitary per party involved.
LoccProtocol local_permutation(const SystemLayout& layout, std::span<const std::size_t> order);

/// Exchanges factor i with factor j.
LoccProtocol swap_factors(const SystemLayout& layout, std::size_t i, std::size_t j);
/// Exchanges two equally shaped factor groups elementwise (e.g. the Alice and
/// Bob halves of two copies): one local swap unitary per party.
LoccProtocol swap_factors(const SystemLayout& layout, std::span<const std::size_t> group_a,
                          std::span<const std::size_t> group_b);

/// d-dimensional depolarizing channel Λ(ρ) = pρ + (1−p)I/d whose entanglement
/// fidelity equals `resource_fidelity`; this is teleportation through an
/// isotropic resource of that singlet fidelity. Valid for F in [1/d², 1].
Channel teleport_channel(double resource_fidelity, std::size_t dim, int party = 1);

/// Generalized Pauli X^a Z^b on a d-dimensional space.
Matrix weyl_operator(std::size_t dim, std::size_t a, std::size_t b);

/// Explicit teleportation: layout [input (Alice, d), resource half (Alice, d),
/// resource half (Bob, d)]. Alice measures in the generalized Bell basis, Bob
/// corrects, Alice discards her two factors. With the maximally entangled
/// resource on the last two factors the output on Bob's factor is the input.
LoccProtocol teleportation_protocol(std::size_t dim);

/// Random multi-round protocol on `layout` (layout-preserving): alternating
/// parties apply a Haar unitary on all their factors followed by a random
/// two-outcome instrument whose outcome selects the other party's next unitary.
LoccProtocol random_protocol(const SystemLayout& layout, std::size_t rounds, std::uint64_t seed);

}  // namespace corrcat
