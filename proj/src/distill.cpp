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


#include <corrcat/distill.hpp>
#include <corrcat/random.hpp>

#include <cmath>
#include <functional>
#include <stdexcept>

namespace corrcat {

namespace {

const Complex kI(0, 1);

Vector singlet_vector() {
  Vector v = Vector::Zero(4);
  v(1) = 1 / std::sqrt(2.0);
  v(2) = -1 / std::sqrt(2.0);
  return v;
}

Matrix pauli(int k) {
  Matrix m = Matrix::Zero(2, 2);
  switch (k) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -kI, kI, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

Matrix cnot() {
  Matrix m = Matrix::Zero(4, 4);
  m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
  return m;
}

void check_werner_range(double f, const char* what) {
  if (!(f >= 0.25 && f <= 1.0))
    throw std::out_of_range(std::string(what) + ": fidelity " + std::to_string(f) + " outside [1/4, 1]");
}

}  // namespace

QState singlet() { return QState::pure(SystemLayout::bipartite(2, 2), singlet_vector()); }

QState werner_state(double fidelity) {
  check_werner_range(fidelity, "werner_state");
  const Vector s = singlet_vector();
  const Matrix proj = s * s.adjoint();
  const Matrix rest = Matrix::Identity(4, 4) - proj;
  return QState(SystemLayout::bipartite(2, 2), fidelity * proj + (1 - fidelity) / 3 * rest);
}

double singlet_fidelity(const QState& rho) {
  if (!(rho.layout() == SystemLayout::bipartite(2, 2)))
    throw LayoutError("singlet_fidelity: expected a two-qubit state, got " + rho.layout().to_string());
  const Vector s = singlet_vector();
  return (s.adjoint() * rho.matrix() * s)(0, 0).real();
}

RecurrenceOutcome recurrence_step(double fidelity) {
  check_werner_range(fidelity, "recurrence_step");
  const double f = fidelity, q = (1 - f) / 3;
  const double p = f * f + 2 * f * q + 5 * q * q;
  return {(f * f + q * q) / p, p};
}

LoccProtocol recurrence_protocol() {
  const SystemLayout layout({{0, 2}, {1, 2}, {0, 2}, {1, 2}});
  LoccProtocol p(layout);
  // ψ⁻ → Φ⁺ on both pairs, bilateral CNOT from pair 1 onto pair 2.
  p.local_unitary(0, {0}, pauli(2));
  p.local_unitary(0, {2}, pauli(2));
  p.local_unitary(0, {0, 2}, cnot());
  p.local_unitary(1, {1, 3}, cnot());
  std::vector<LoccProtocol> bob;
  for (int a = 0; a < 2; ++a) {
    LoccProtocol b(layout);
    b.local(1, {3}, Instrument::basis_measurement(2));
    bob.push_back(std::move(b));
  }
  p.local(0, {2}, Instrument::basis_measurement(2), std::move(bob));
  p.discard({2, 3});
  p.local_unitary(0, {0}, pauli(2));
  return p;
}

LoccProtocol twirl_protocol() {
  const SystemLayout layout = SystemLayout::bipartite(2, 2);
  // R: rotation by 2π/3 about (1,1,1)/√3, cycling X → Y → Z.
  const Matrix r = 0.5 * Matrix::Identity(2, 2) - 0.5 * kI * (pauli(1) + pauli(2) + pauli(3));
  std::vector<Outcome> outcomes;
  std::vector<LoccProtocol> branches;
  Matrix rj = Matrix::Identity(2, 2);
  for (int j = 0; j < 3; ++j, rj = r * rj)
    for (int k = 0; k < 4; ++k) {
      const Matrix u = rj * pauli(k);
      outcomes.push_back({std::to_string(j) + std::to_string(k), {std::sqrt(1.0 / 12) * u}});
      LoccProtocol b(layout);
      b.local_unitary(1, {1}, u);
      branches.push_back(std::move(b));
    }
  LoccProtocol p(layout);
  p.local(0, {0}, Instrument(std::move(outcomes)), std::move(branches));
  return p;
}

Channel twirl_channel() { return flatten(twirl_protocol()); }

RecurrenceSimulation recurrence_simulation(double fidelity) {
  check_werner_range(fidelity, "recurrence_simulation");
  const QState w = werner_state(fidelity);
  const Channel c = flatten(recurrence_protocol(), {.keep_transcript = true});
  const QState out = apply(c, tensor(w, w));
  // Transcript paths are (a, b) in lexicographic order; keep a == b.
  const Eigen::Index paths = static_cast<Eigen::Index>(out.layout()[2].dim);
  Matrix kept = Matrix::Zero(4, 4);
  for (Eigen::Index t : {Eigen::Index{0}, paths - 1})
    for (Eigen::Index i = 0; i < 4; ++i)
      for (Eigen::Index j = 0; j < 4; ++j) kept(i, j) += out.matrix()(i * paths + t, j * paths + t);
  const double p = kept.trace().real();
  const QState post(SystemLayout::bipartite(2, 2), kept / p);
  const QState twirled = apply(twirl_channel(), post);
  return {{singlet_fidelity(twirled), p}, twirled};
}

DistillRun distill_to(double target_fidelity, double initial_fidelity) {
  if (!(initial_fidelity > 0.5))
    throw PreconditionError("distill_to: initial fidelity " + std::to_string(initial_fidelity) +
                            " <= 1/2; the recurrence protocol cannot distill such Werner states");
  if (!(target_fidelity < 1.0)) throw PreconditionError("distill_to: target fidelity must be below 1");
  if (!(initial_fidelity < target_fidelity))
    throw PreconditionError("distill_to: target fidelity must exceed the initial fidelity");
  constexpr std::size_t kMaxRounds = 10000;
  DistillRun run;
  double f = initial_fidelity;
  while (f < target_fidelity) {
    if (run.rounds.size() == kMaxRounds) throw PreconditionError("distill_to: round limit reached");
    const auto step = recurrence_step(f);
    run.rounds.push_back({f, step.fidelity, step.success_probability});
    run.copies_consumed *= 2 / step.success_probability;
    f = step.fidelity;
  }
  return run;
}

double distill_monte_carlo(double target_fidelity, double initial_fidelity, std::size_t trials, std::uint64_t seed) {
  const DistillRun run = distill_to(target_fidelity, initial_fidelity);
  if (run.copies_consumed > 1e6) throw PreconditionError("distill_monte_carlo: expected cost too large to sample");
  if (trials == 0) throw std::invalid_argument("distill_monte_carlo: need at least one trial");
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::function<double(std::size_t)> sample = [&](std::size_t level) -> double {
    if (level == 0) return 1;
    double spent = 0;
    for (;;) {
      spent += sample(level - 1) + sample(level - 1);
      if (unit(rng) < run.rounds[level - 1].success_probability) return spent;
    }
  };
  double total = 0;
  for (std::size_t t = 0; t < trials; ++t) total += sample(run.rounds.size());
  return total / static_cast<double>(trials);
}

std::vector<SweepRow> recurrence_sweep(double f_min, double f_max, std::size_t points) {
  if (points < 2) throw std::invalid_argument("recurrence_sweep: need at least two points");
  std::vector<SweepRow> rows;
  for (std::size_t i = 0; i < points; ++i) {
    const double f = f_min + (f_max - f_min) * static_cast<double>(i) / static_cast<double>(points - 1);
    const auto r = recurrence_step(f);
    rows.push_back({f, r.fidelity, r.success_probability, 2 / r.success_probability});
  }
  return rows;
}

ApproxCatalyst synthesize_tau_eps(const QState& tau, double resource_fidelity, int receiver) {
  if (!(resource_fidelity > 0.25 && resource_fidelity <= 1.0))
    throw std::out_of_range("synthesize_tau_eps: resource fidelity " + std::to_string(resource_fidelity) +
                            " outside (1/4, 1]");
  QState out = tau;
  for (std::size_t i = 0; i < tau.layout().size(); ++i) {
    const auto& f = tau.layout()[i];
    if (f.party != receiver || f.dim < 2) continue;
    const std::size_t target[] = {i};
    out = apply_to_factors(teleport_channel(resource_fidelity, f.dim, receiver), out, target);
  }
  return {out, trace_norm_dist(out, tau)};
}

double resource_fidelity_for_epsilon(const QState& tau, double epsilon, int receiver) {
  if (!(epsilon >= 0)) throw std::invalid_argument("resource_fidelity_for_epsilon: epsilon must be non-negative");
  double lo = 0.25 + 1e-12, hi = 1.0;
  if (synthesize_tau_eps(tau, lo, receiver).epsilon <= epsilon) return lo;
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    (synthesize_tau_eps(tau, mid, receiver).epsilon <= epsilon ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace corrcat
