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

#include <corrcat/locc.hpp>

#include <algorithm>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace corrcat {

namespace {

constexpr double kNegligibleKraus = 1e-15;
// Above this many operators (and for small enough Choi matrices) a Kraus set
// is re-expressed in minimal form.
constexpr Eigen::Index kMaxChoiDim = 1024;

std::vector<std::size_t> complement(std::size_t n, std::span<const std::size_t> chosen) {
  std::vector<bool> taken(n, false);
  for (auto i : chosen) taken[i] = true;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < n; ++i)
    if (!taken[i]) rest.push_back(i);
  return rest;
}

Eigen::Index dim_of(const SystemLayout& l) { return static_cast<Eigen::Index>(l.total_dim()); }

std::vector<Matrix> maybe_compress(std::vector<Matrix> ops, const SystemLayout& in, const SystemLayout& out) {
  std::erase_if(ops, [](const Matrix& k) { return k.norm() < kNegligibleKraus; });
  const Eigen::Index choi_dim = dim_of(in) * dim_of(out);
  if (static_cast<Eigen::Index>(ops.size()) > choi_dim && choi_dim <= kMaxChoiDim)
    return compress(Channel(in, out, std::move(ops))).kraus;
  return ops;
}

}  // namespace

// ---------------------------------------------------------------------------
// Channel

Channel::Channel(SystemLayout in, SystemLayout out, std::vector<Matrix> ops)
    : input(std::move(in)), output(std::move(out)), kraus(std::move(ops)) {
  for (const auto& k : kraus)
    if (k.rows() != dim_of(output) || k.cols() != dim_of(input))
      throw LayoutError("Kraus operator of size " + std::to_string(k.rows()) + "x" + std::to_string(k.cols()) +
                        " does not map " + input.to_string() + " to " + output.to_string());
}

Channel Channel::identity(const SystemLayout& layout) {
  return Channel(layout, layout, {Matrix::Identity(dim_of(layout), dim_of(layout))});
}

Channel Channel::unitary(const SystemLayout& layout, const Matrix& u) { return Channel(layout, layout, {u}); }

Matrix Channel::completeness() const {
  Matrix sum = Matrix::Zero(dim_of(input), dim_of(input));
  for (const auto& k : kraus) sum.noalias() += k.adjoint() * k;
  return sum;
}

double Channel::completeness_defect() const {
  const Matrix c = completeness() - Matrix::Identity(dim_of(input), dim_of(input));
  return c.size() ? c.cwiseAbs().maxCoeff() : 0.0;
}

bool Channel::is_trace_preserving(double tol) const { return completeness_defect() <= tol; }

namespace {

QState finish_output(SystemLayout layout, Matrix out) {
  const double tr = out.trace().real();
  if (std::abs(tr - 1.0) > kCompletenessTol)
    throw ChannelError("channel output has trace " + std::to_string(tr) + " (not trace preserving?)");
  out /= tr;
  return QState(std::move(layout), std::move(out));
}

}  // namespace

QState apply(const Channel& c, const QState& s) {
  if (!(c.input == s.layout()))
    throw LayoutError("apply: state layout " + s.layout().to_string() + " does not match channel input " +
                      c.input.to_string());
  if (c.output.total_dim() > kMaxTotalDim) throw DimensionCapError("apply: output exceeds dimension cap");
  Matrix out = Matrix::Zero(dim_of(c.output), dim_of(c.output));
  for (const auto& k : c.kraus) out.noalias() += k * s.matrix() * k.adjoint();
  return finish_output(c.output, std::move(out));
}

QState apply_to_factors(const Channel& c, const QState& s, std::span<const std::size_t> targets) {
  const auto& layout = s.layout();
  check_factor_indices(layout, targets);
  if (!(c.input == layout.select(targets)))
    throw LayoutError("apply_to_factors: channel input " + c.input.to_string() + " does not match selected factors " +
                      layout.select(targets).to_string());
  const auto rest = complement(layout.size(), targets);
  std::vector<std::size_t> order = rest;
  order.insert(order.end(), targets.begin(), targets.end());
  const QState arranged = permute(s, order);

  const Eigen::Index d_rest = static_cast<Eigen::Index>(layout.dim_of(rest));
  const Eigen::Index d_in = dim_of(c.input), d_out = dim_of(c.output);
  const Eigen::Index full_in = d_rest * d_in, full_out = d_rest * d_out;
  const SystemLayout out_layout = layout.select(rest).concat(c.output);
  if (out_layout.total_dim() > kMaxTotalDim) throw DimensionCapError("apply_to_factors: output exceeds cap");

  const Matrix& rho = arranged.matrix();
  Matrix result = Matrix::Zero(full_out, full_out);
  Matrix right(full_in, full_out);
  for (const auto& k : c.kraus) {
    const Matrix kt = k.adjoint();
    // right = ρ (I ⊗ K†), then result += (I ⊗ K) right.
    for (Eigen::Index r = 0; r < d_rest; ++r)
      right.middleCols(r * d_out, d_out).noalias() = rho.middleCols(r * d_in, d_in) * kt;
    for (Eigen::Index r = 0; r < d_rest; ++r)
      result.middleRows(r * d_out, d_out).noalias() += k * right.middleRows(r * d_in, d_in);
  }
  QState out = finish_output(out_layout, std::move(result));
  if (!(c.input == c.output)) return out;
  std::vector<std::size_t> inverse(order.size());
  for (std::size_t q = 0; q < order.size(); ++q) inverse[order[q]] = q;
  return permute(out, inverse);
}

Channel compose(const Channel& second, const Channel& first) {
  if (!(second.input == first.output))
    throw LayoutError("compose: " + first.output.to_string() + " feeds " + second.input.to_string());
  std::vector<Matrix> ops;
  ops.reserve(second.kraus.size() * first.kraus.size());
  for (const auto& b : second.kraus)
    for (const auto& a : first.kraus) ops.push_back(b * a);
  return Channel(first.input, second.output, maybe_compress(std::move(ops), first.input, second.output));
}

Channel tensor(const Channel& a, const Channel& b) {
  std::vector<Matrix> ops;
  for (const auto& ka : a.kraus)
    for (const auto& kb : b.kraus) ops.push_back(linalg::kron(ka, kb));
  return Channel(a.input.concat(b.input), a.output.concat(b.output), std::move(ops));
}

Matrix choi(const Channel& c) {
  const Eigen::Index din = dim_of(c.input), dout = dim_of(c.output);
  Matrix j = Matrix::Zero(din * dout, din * dout);
  Vector v(din * dout);
  for (const auto& k : c.kraus) {
    for (Eigen::Index i = 0; i < din; ++i) v.segment(i * dout, dout) = k.col(i);
    j.noalias() += v * v.adjoint();
  }
  return j;
}

Channel compress(const Channel& c, double tol) {
  const Eigen::Index din = dim_of(c.input), dout = dim_of(c.output);
  Eigen::SelfAdjointEigenSolver<Matrix> es(choi(c));
  const double top = std::max(es.eigenvalues().maxCoeff(), 0.0);
  std::vector<Matrix> ops;
  for (Eigen::Index e = es.eigenvalues().size(); e-- > 0;) {
    const double lambda = es.eigenvalues()(e);
    if (lambda <= tol * std::max(top, 1.0)) break;
    Matrix k(dout, din);
    for (Eigen::Index i = 0; i < din; ++i) k.col(i) = std::sqrt(lambda) * es.eigenvectors().col(e).segment(i * dout, dout);
    ops.push_back(std::move(k));
  }
  return Channel(c.input, c.output, std::move(ops));
}

double choi_distance(const Channel& a, const Channel& b) {
  if (!(a.input == b.input) || !(a.output == b.output)) throw LayoutError("choi_distance: layouts differ");
  const Matrix diff = choi(a) - choi(b);
  return diff.size() ? diff.cwiseAbs().maxCoeff() : 0.0;
}

Matrix embed_operator(const Matrix& op, const SystemLayout& layout, std::span<const std::size_t> targets) {
  check_factor_indices(layout, targets);
  const auto dt = static_cast<Eigen::Index>(layout.dim_of(targets));
  if (op.rows() != dt || op.cols() != dt)
    throw LayoutError("embed_operator: operator size does not match target factors");
  const auto rest = complement(layout.size(), targets);
  const auto off_t = basis_offsets(layout, targets);
  const auto off_r = basis_offsets(layout, rest);
  const Eigen::Index d = dim_of(layout);
  Matrix full = Matrix::Zero(d, d);
  for (Eigen::Index r : off_r)
    for (Eigen::Index j = 0; j < dt; ++j)
      for (Eigen::Index i = 0; i < dt; ++i) full(r + off_t[i], r + off_t[j]) = op(i, j);
  return full;
}

// ---------------------------------------------------------------------------
// Instrument

Instrument::Instrument(std::vector<Outcome> outcomes) : outcomes_(std::move(outcomes)) {
  if (outcomes_.empty()) throw ChannelError("instrument needs at least one outcome");
  dim_ = -1;
  for (const auto& o : outcomes_)
    for (const auto& k : o.kraus) {
      if (k.rows() != k.cols()) throw ChannelError("instrument operators must be square");
      if (dim_ < 0) dim_ = k.rows();
      if (k.rows() != dim_) throw ChannelError("instrument operators differ in dimension");
    }
  if (dim_ < 0) throw ChannelError("instrument has no operators");
  Matrix sum = Matrix::Zero(dim_, dim_);
  for (const auto& o : outcomes_)
    for (const auto& k : o.kraus) sum.noalias() += k.adjoint() * k;
  const double defect = (sum - Matrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff();
  if (defect > kCompletenessTol)
    throw ChannelError("instrument is not trace preserving (defect " + std::to_string(defect) + ")");
}

Instrument Instrument::unitary(const Matrix& u, std::string label) {
  return Instrument({Outcome{std::move(label), {u}}});
}

Instrument Instrument::basis_measurement(std::size_t dim) {
  std::vector<Outcome> outs;
  const auto d = static_cast<Eigen::Index>(dim);
  for (Eigen::Index k = 0; k < d; ++k) {
    Matrix p = Matrix::Zero(d, d);
    p(k, k) = 1;
    outs.push_back({std::to_string(k), {p}});
  }
  return Instrument(std::move(outs));
}

Instrument Instrument::random(std::size_t dim, std::size_t outcomes, Rng& rng) {
  const auto d = static_cast<Eigen::Index>(dim);
  const auto m = static_cast<Eigen::Index>(outcomes);
  const Matrix v = linalg::haar_isometry(d * m, d, rng);
  std::vector<Outcome> outs;
  for (Eigen::Index j = 0; j < m; ++j) outs.push_back({std::to_string(j), {v.middleRows(j * d, d)}});
  return Instrument(std::move(outs));
}

// ---------------------------------------------------------------------------
// LoccProtocol

LoccProtocol::LoccProtocol(SystemLayout input) : input_(input), output_(std::move(input)) {}

LoccProtocol& LoccProtocol::local(int party, std::vector<std::size_t> targets, Instrument instrument,
                                  std::vector<LoccProtocol> branches) {
  check_factor_indices(output_, targets);
  for (auto t : targets)
    if (output_[t].party != party)
      throw LocalityError("party " + std::to_string(party) + " cannot act on factor " + std::to_string(t) +
                          " owned by party " + std::to_string(output_[t].party));
  if (instrument.dim() != static_cast<Eigen::Index>(output_.dim_of(targets)))
    throw LayoutError("instrument dimension does not match its target factors");
  SystemLayout next = output_;
  if (!branches.empty()) {
    if (branches.size() != instrument.size())
      throw LayoutError("need one branch per instrument outcome (" + std::to_string(instrument.size()) + ")");
    for (const auto& b : branches)
      if (!(b.input_layout() == output_)) throw LayoutError("branch layout mismatch");
    next = branches.front().output_layout();
    for (const auto& b : branches)
      if (!(b.output_layout() == next)) throw LayoutError("branches disagree on their output layout");
  }
  steps_.emplace_back(LocalStep{party, std::move(targets), std::move(instrument), std::move(branches)});
  output_ = std::move(next);
  return *this;
}

LoccProtocol& LoccProtocol::local_unitary(int party, std::vector<std::size_t> targets, const Matrix& u) {
  return local(party, std::move(targets), Instrument::unitary(u));
}

LoccProtocol& LoccProtocol::nested(std::vector<std::size_t> targets, LoccProtocol body) {
  check_factor_indices(output_, targets);
  if (!(body.input_layout() == output_.select(targets)))
    throw LayoutError("nested protocol input " + body.input_layout().to_string() + " does not match target factors " +
                      output_.select(targets).to_string());
  if (!(body.output_layout() == body.input_layout()))
    throw LayoutError("nested protocol must preserve its layout");
  NestedStep step{std::move(targets), {}};
  step.body.push_back(std::move(body));
  steps_.emplace_back(std::move(step));
  return *this;
}

LoccProtocol& LoccProtocol::discard(std::vector<std::size_t> targets) {
  check_factor_indices(output_, targets);
  SystemLayout next = output_.without(targets);
  steps_.emplace_back(DiscardStep{std::move(targets)});
  output_ = std::move(next);
  return *this;
}

LoccProtocol& LoccProtocol::prepare(Factor factor, Matrix state) {
  // Validates the local state.
  QState local(SystemLayout({factor}), state);
  output_ = output_.concat(SystemLayout({factor}));
  steps_.emplace_back(PrepareStep{factor, local.matrix()});
  return *this;
}

LoccProtocol& LoccProtocol::then(const LoccProtocol& next) {
  if (!(next.input_layout() == output_))
    throw LayoutError("then: " + next.input_layout().to_string() + " does not follow " + output_.to_string());
  steps_.insert(steps_.end(), next.steps_.begin(), next.steps_.end());
  output_ = next.output_;
  return *this;
}

std::size_t LoccProtocol::depth() const {
  std::size_t d = 0;
  for (const auto& step : steps_) {
    if (const auto* l = std::get_if<LocalStep>(&step)) {
      std::size_t deepest = 0;
      for (const auto& b : l->branches) deepest = std::max(deepest, b.depth());
      d += 1 + deepest;
    } else if (const auto* n = std::get_if<NestedStep>(&step)) {
      d += n->body.front().depth();
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// Flattening

namespace {

// Kraus sets grouped by outcome transcript; every operator maps the protocol
// input to the current layout.
using Groups = std::vector<std::vector<Matrix>>;

Groups multiply(const Groups& before, const std::vector<Groups>& after_per_outcome, bool merge,
                const SystemLayout& in, const SystemLayout& out) {
  Groups next;
  for (const auto& g : before)
    for (const auto& after : after_per_outcome)
      for (const auto& h : after) {
        std::vector<Matrix> ops;
        ops.reserve(g.size() * h.size());
        for (const auto& b : h)
          for (const auto& a : g) ops.push_back(b * a);
        next.push_back(std::move(ops));
      }
  if (!merge) {
    for (auto& ops : next) ops = maybe_compress(std::move(ops), in, out);
    return next;
  }
  std::vector<Matrix> all;
  for (auto& ops : next)
    for (auto& k : ops) all.push_back(std::move(k));
  return Groups{maybe_compress(std::move(all), in, out)};
}

std::vector<Matrix> discard_ops(const SystemLayout& layout, std::span<const std::size_t> targets) {
  const auto rest = complement(layout.size(), targets);
  const auto off_t = basis_offsets(layout, targets);
  const auto off_r = basis_offsets(layout, rest);
  std::vector<Matrix> ops;
  for (Eigen::Index t : off_t) {
    Matrix k = Matrix::Zero(static_cast<Eigen::Index>(off_r.size()), dim_of(layout));
    for (std::size_t r = 0; r < off_r.size(); ++r) k(static_cast<Eigen::Index>(r), off_r[r] + t) = 1;
    ops.push_back(std::move(k));
  }
  return ops;
}

std::vector<Matrix> prepare_ops(const SystemLayout& layout, const Matrix& state) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(state);
  const Eigen::Index d = dim_of(layout), e = state.rows();
  std::vector<Matrix> ops;
  for (Eigen::Index i = 0; i < e; ++i) {
    const double lambda = es.eigenvalues()(i);
    if (lambda <= 1e-15) continue;
    const Vector v = std::sqrt(lambda) * es.eigenvectors().col(i);
    Matrix k = Matrix::Zero(d * e, d);
    for (Eigen::Index x = 0; x < d; ++x) k.block(x * e, x, e, 1) = v;
    ops.push_back(std::move(k));
  }
  return ops;
}

Groups flatten_groups(const LoccProtocol& p, bool merge) {
  SystemLayout layout = p.input_layout();
  const SystemLayout& in = p.input_layout();
  Groups groups{{Matrix::Identity(dim_of(layout), dim_of(layout))}};
  for (const auto& step : p.steps()) {
    if (const auto* l = std::get_if<LocalStep>(&step)) {
      std::vector<Groups> per_outcome;
      SystemLayout next = layout;
      for (std::size_t k = 0; k < l->instrument.size(); ++k) {
        std::vector<Matrix> local_ops;
        for (const auto& op : l->instrument[k].kraus) local_ops.push_back(embed_operator(op, layout, l->targets));
        if (l->branches.empty()) {
          per_outcome.push_back(Groups{std::move(local_ops)});
          continue;
        }
        const auto& branch = l->branches[k];
        next = branch.output_layout();
        Groups sub = flatten_groups(branch, merge);
        for (auto& g : sub) {
          std::vector<Matrix> ops;
          for (const auto& b : g)
            for (const auto& a : local_ops) ops.push_back(b * a);
          g = std::move(ops);
        }
        per_outcome.push_back(std::move(sub));
      }
      groups = multiply(groups, per_outcome, merge, in, next);
      layout = next;
    } else if (const auto* n = std::get_if<NestedStep>(&step)) {
      Groups sub = flatten_groups(n->body.front(), merge);
      for (auto& g : sub)
        for (auto& k : g) k = embed_operator(k, layout, n->targets);
      groups = multiply(groups, {sub}, merge, in, layout);
    } else if (const auto* d = std::get_if<DiscardStep>(&step)) {
      auto ops = discard_ops(layout, d->targets);
      layout = layout.without(d->targets);
      groups = multiply(groups, {Groups{std::move(ops)}}, merge, in, layout);
    } else if (const auto* pr = std::get_if<PrepareStep>(&step)) {
      auto ops = prepare_ops(layout, pr->state);
      layout = layout.concat(SystemLayout({pr->factor}));
      groups = multiply(groups, {Groups{std::move(ops)}}, merge, in, layout);
    }
  }
  return groups;
}

}  // namespace

Channel flatten(const LoccProtocol& p, FlattenOptions options) {
  Groups groups = flatten_groups(p, !options.keep_transcript);
  if (!options.keep_transcript) return Channel(p.input_layout(), p.output_layout(), std::move(groups.front()));
  const auto paths = static_cast<Eigen::Index>(groups.size());
  std::vector<Matrix> ops;
  for (Eigen::Index g = 0; g < paths; ++g) {
    const Matrix tag = linalg::basis_vector(paths, g);
    for (const auto& k : groups[static_cast<std::size_t>(g)]) ops.push_back(linalg::kron(k, tag));
  }
  SystemLayout out = p.output_layout().concat(SystemLayout({{0, static_cast<std::size_t>(paths)}}));
  return Channel(p.input_layout(), std::move(out), std::move(ops));
}

LoccProtocol tensor(const LoccProtocol& a, const LoccProtocol& b) {
  const SystemLayout layout = a.input_layout().concat(b.input_layout());
  std::vector<std::size_t> first(a.input_layout().size()), second(b.input_layout().size());
  std::iota(first.begin(), first.end(), 0);
  std::iota(second.begin(), second.end(), a.input_layout().size());
  LoccProtocol p(layout);
  if (!a.empty()) p.nested(first, a);
  if (!b.empty()) p.nested(second, b);
  return p;
}

LoccProtocol tensor_power(const LoccProtocol& p, std::size_t copies) {
  if (copies == 0) return LoccProtocol(SystemLayout{});
  LoccProtocol out = p;
  for (std::size_t c = 1; c < copies; ++c) out = tensor(out, p);
  return out;
}

LoccProtocol controlled_on_register(const SystemLayout& layout, std::size_t register_factor,
                                    std::vector<LoccProtocol> branches) {
  if (register_factor >= layout.size()) throw LayoutError("register factor out of range");
  const auto& reg = layout[register_factor];
  if (reg.dim != branches.size())
    throw LayoutError("register dimension " + std::to_string(reg.dim) + " differs from branch count " +
                      std::to_string(branches.size()));
  for (const auto& b : branches)
    if (!(b.input_layout() == layout)) throw LayoutError("branch layout mismatch");
  LoccProtocol p(layout);
  p.local(reg.party, {register_factor}, Instrument::basis_measurement(reg.dim), std::move(branches));
  return p;
}

LoccProtocol local_permutation(const SystemLayout& layout, std::span<const std::size_t> order) {
  if (order.size() != layout.size()) throw LayoutError("permutation must list every factor");
  check_factor_indices(layout, order);
  for (std::size_t p = 0; p < order.size(); ++p)
    if (!(layout[order[p]] == layout[p]))
      throw LayoutError("factor " + std::to_string(order[p]) + " cannot move to position " + std::to_string(p) +
                        ": party or dimension differs");
  LoccProtocol protocol(layout);
  for (int party : layout.parties()) {
    std::vector<std::size_t> moved;
    for (std::size_t p = 0; p < order.size(); ++p)
      if (layout[p].party == party && order[p] != p) moved.push_back(p);
    if (moved.empty()) continue;
    // U|x⟩ = |y⟩ with y at position t taken from x at position order[t].
    std::vector<std::size_t> where(layout.size(), 0);
    for (std::size_t i = 0; i < moved.size(); ++i) where[moved[i]] = i;
    const auto d = static_cast<Eigen::Index>(layout.dim_of(moved));
    std::vector<std::size_t> dims;
    for (auto t : moved) dims.push_back(layout[t].dim);
    Matrix u = Matrix::Zero(d, d);
    std::vector<std::size_t> digits(moved.size(), 0), out_digits(moved.size());
    for (Eigen::Index x = 0; x < d; ++x) {
      for (std::size_t i = 0; i < moved.size(); ++i) out_digits[i] = digits[where[order[moved[i]]]];
      Eigen::Index y = 0;
      for (std::size_t i = 0; i < moved.size(); ++i) y = y * static_cast<Eigen::Index>(dims[i]) + static_cast<Eigen::Index>(out_digits[i]);
      u(y, x) = 1;
      for (std::size_t i = moved.size(); i-- > 0;) {
        if (++digits[i] < dims[i]) break;
        digits[i] = 0;
      }
    }
    protocol.local_unitary(party, moved, u);
  }
  return protocol;
}

LoccProtocol swap_factors(const SystemLayout& layout, std::size_t i, std::size_t j) {
  const std::size_t a[] = {i};
  const std::size_t b[] = {j};
  return swap_factors(layout, a, b);
}

LoccProtocol swap_factors(const SystemLayout& layout, std::span<const std::size_t> group_a,
                          std::span<const std::size_t> group_b) {
  if (group_a.size() != group_b.size()) throw LayoutError("swap_factors: groups differ in length");
  std::vector<std::size_t> order(layout.size());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t k = 0; k < group_a.size(); ++k) {
    if (group_a[k] >= layout.size() || group_b[k] >= layout.size()) throw LayoutError("swap_factors: index out of range");
    if (!(layout[group_a[k]] == layout[group_b[k]]))
      throw LayoutError("swap_factors: factors " + std::to_string(group_a[k]) + " and " + std::to_string(group_b[k]) +
                        " differ in party or dimension");
    order[group_a[k]] = group_b[k];
    order[group_b[k]] = group_a[k];
  }
  return local_permutation(layout, order);
}

Matrix weyl_operator(std::size_t dim, std::size_t a, std::size_t b) {
  const auto d = static_cast<Eigen::Index>(dim);
  Matrix w = Matrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(b) * static_cast<double>(j) / static_cast<double>(d);
    w((j + static_cast<Eigen::Index>(a)) % d, j) = std::polar(1.0, angle);
  }
  return w;
}

Channel teleport_channel(double resource_fidelity, std::size_t dim, int party) {
  const double d2 = static_cast<double>(dim * dim);
  if (dim < 2) throw std::out_of_range("teleport_channel: dimension must be at least 2");
  if (!(resource_fidelity >= 1.0 / d2 - 1e-12 && resource_fidelity <= 1.0 + 1e-12))
    throw std::out_of_range("teleport_channel: resource fidelity " + std::to_string(resource_fidelity) +
                            " outside [1/d^2, 1]");
  const double f = std::clamp(resource_fidelity, 1.0 / d2, 1.0);
  const double other = (1.0 - f) / (d2 - 1.0);
  std::vector<Matrix> ops;
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b) {
      const double w = (a == 0 && b == 0) ? f : other;
      if (w > 0) ops.push_back(std::sqrt(w) * weyl_operator(dim, a, b));
    }
  SystemLayout layout({{party, dim}});
  return Channel(layout, layout, std::move(ops));
}

LoccProtocol teleportation_protocol(std::size_t dim) {
  const auto d = static_cast<Eigen::Index>(dim);
  const SystemLayout layout({{0, dim}, {0, dim}, {1, dim}});
  Vector phi = Vector::Zero(d * d);
  for (Eigen::Index j = 0; j < d; ++j) phi(j * d + j) = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<Outcome> outcomes;
  std::vector<LoccProtocol> corrections;
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b) {
      const Matrix w = weyl_operator(dim, a, b);
      const Vector bell = linalg::kron(w, Matrix::Identity(d, d)) * phi;
      outcomes.push_back({std::to_string(a) + "," + std::to_string(b), {bell * bell.adjoint()}});
      LoccProtocol fix(layout);
      fix.local_unitary(1, {2}, w);
      corrections.push_back(std::move(fix));
    }
  LoccProtocol p(layout);
  p.local(0, {0, 1}, Instrument(std::move(outcomes)), std::move(corrections));
  p.discard({0, 1});
  return p;
}

LoccProtocol random_protocol(const SystemLayout& layout, std::size_t rounds, std::uint64_t seed) {
  Rng rng(seed);
  const auto parties = layout.parties();
  LoccProtocol p(layout);
  for (std::size_t r = 0; r < rounds; ++r) {
    const int actor = parties[r % parties.size()];
    const std::vector<int> actor_set{actor};
    const auto mine = layout.factors_of(actor_set);
    const auto dim = layout.dim_of(mine);
    p.local_unitary(actor, mine, linalg::haar_unitary(static_cast<Eigen::Index>(dim), rng));
    Instrument inst = Instrument::random(dim, 2, rng);
    std::vector<LoccProtocol> branches;
    if (parties.size() > 1) {
      const int other = parties[(r + 1) % parties.size()];
      const std::vector<int> other_set{other};
      const auto theirs = layout.factors_of(other_set);
      for (std::size_t k = 0; k < inst.size(); ++k) {
        LoccProtocol b(layout);
        b.local_unitary(other, theirs, linalg::haar_unitary(static_cast<Eigen::Index>(layout.dim_of(theirs)), rng));
        branches.push_back(std::move(b));
      }
    }
    p.local(actor, mine, std::move(inst), std::move(branches));
  }
  return p;
}

}  // namespace corrcat
