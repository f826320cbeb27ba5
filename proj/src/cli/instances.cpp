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


#include <corrcat/cli/instances.hpp>
#include <corrcat/cli/scenario.hpp>
#include <corrcat/distill.hpp>
#include <corrcat/purecat.hpp>
#include <corrcat/random.hpp>
#include <corrcat/serialize.hpp>

#include <charconv>
#include <numeric>

namespace corrcat::cli {

namespace {

struct Spec {
  std::string head;
  std::vector<std::string> args;  // split on ':'
};

Spec split_spec(std::string_view spec) {
  Spec out;
  std::size_t pos = 0;
  bool first = true;
  while (pos <= spec.size()) {
    auto end = spec.find(':', pos);
    // file: takes the rest verbatim.
    if (!first && out.head == "file") end = std::string_view::npos;
    if (end == std::string_view::npos) end = spec.size();
    std::string part(spec.substr(pos, end - pos));
    if (first) out.head = std::move(part);
    else out.args.push_back(std::move(part));
    first = false;
    pos = end + 1;
  }
  return out;
}

std::uint64_t parse_u64(const std::string& s, std::string_view spec) {
  std::uint64_t v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size())
    throw ParseError("'" + std::string(spec) + "': expected an integer, got '" + s + "'");
  return v;
}

void expect_args(const Spec& s, std::size_t lo, std::size_t hi, std::string_view spec) {
  if (s.args.size() < lo || s.args.size() > hi)
    throw ParseError("malformed spec '" + std::string(spec) + "'");
}

std::filesystem::path resolve(const std::string& p, const std::filesystem::path& base) {
  std::filesystem::path path(p);
  return path.is_absolute() || base.empty() ? path : base / path;
}

}  // namespace

FlaggedSeparable separable_state(std::uint64_t seed, std::size_t terms) {
  if (terms == 0 || terms > 4) throw std::invalid_argument("separable_state: 1 to 4 terms");
  Rng rng(seed);
  std::uniform_real_distribution<double> unit(0.1, 1.0);
  std::vector<double> w(terms);
  for (auto& x : w) x = unit(rng);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  const auto t = static_cast<Eigen::Index>(terms);
  Matrix rho = Matrix::Zero(4, 4), ext = Matrix::Zero(4 * t, 4 * t);
  for (Eigen::Index i = 0; i < t; ++i) {
    const Vector a = linalg::gaussian_matrix(2, 1, rng).col(0).normalized();
    const Vector b = linalg::gaussian_matrix(2, 1, rng).col(0).normalized();
    const Vector ab = linalg::kron(a, b);
    const Matrix term = w[static_cast<std::size_t>(i)] / total * (ab * ab.adjoint());
    rho += term;
    Matrix flag = Matrix::Zero(t, t);
    flag(i, i) = 1;
    ext += linalg::kron(term, flag);
  }
  const SystemLayout layout = SystemLayout::bipartite(2, 2);
  return {QState(layout, rho), QState(layout.concat(SystemLayout({{2, terms}})), ext)};
}

QState make_state(std::string_view spec, const std::filesystem::path& base_dir) {
  const Spec s = split_spec(spec);
  const SystemLayout qubits = SystemLayout::bipartite(2, 2);
  if (s.head == "singlet") {
    expect_args(s, 0, 0, spec);
    return singlet();
  }
  if (s.head == "werner") {
    expect_args(s, 1, 1, spec);
    return werner_state(parse_real(s.args[0]));
  }
  if (s.head == "schmidt") {
    expect_args(s, 1, 1, spec);
    return canonical_pure_state(SchmidtVector(parse_real_list(s.args[0])));
  }
  if (s.head == "haar") {
    expect_args(s, 1, 1, spec);
    return random_state(qubits, Ensemble::kHaarPure, parse_u64(s.args[0], spec));
  }
  if (s.head == "ginibre") {
    expect_args(s, 1, 2, spec);
    const std::size_t rank = s.args.size() > 1 ? parse_u64(s.args[1], spec) : 0;
    return random_state(qubits, Ensemble::kGinibreMixed, parse_u64(s.args[0], spec), rank);
  }
  if (s.head == "separable") {
    expect_args(s, 1, 2, spec);
    const std::size_t terms = s.args.size() > 1 ? parse_u64(s.args[1], spec) : 3;
    return separable_state(parse_u64(s.args[0], spec), terms).state;
  }
  if (s.head == "file") {
    expect_args(s, 1, 1, spec);
    return load_state(resolve(s.args[0], base_dir));
  }
  throw ParseError("unknown state spec '" + std::string(spec) + "'");
}

LoccProtocol make_protocol(std::string_view spec, const QState& rho, std::size_t n, std::size_t convert,
                           const std::filesystem::path& base_dir) {
  const Spec s = split_spec(spec);
  const SystemLayout& copy = rho.layout();
  const SystemLayout layout = copy.repeat(n);
  if (s.head == "identity") {
    expect_args(s, 0, 0, spec);
    return LoccProtocol(layout);
  }
  if (s.head == "cycle") {
    expect_args(s, 0, 0, spec);
    // Output copy j holds input copy j − 1 (mod n).
    std::vector<std::size_t> order;
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t f = 0; f < copy.size(); ++f) order.push_back(((c + n - 1) % n) * copy.size() + f);
    return local_permutation(layout, order);
  }
  if (s.head == "twirl") {
    expect_args(s, 0, 0, spec);
    return tensor_power(twirl_protocol(), n);
  }
  if (s.head == "nielsen") {
    expect_args(s, 1, 1, spec);
    if (convert == 0 || convert > n) throw ParseError("nielsen: convert must lie in 1..n");
    const SchmidtVector source = schmidt_decompose(rho);
    const SchmidtVector target(parse_real_list(s.args[0]));
    const LoccProtocol one = synthesize_pure_protocol(source, target);
    if (!(one.input_layout() == copy))
      throw LayoutError("nielsen: rho must be a canonical Schmidt state of local dimension " +
                        std::to_string(one.input_layout()[0].dim));
    LoccProtocol p = tensor_power(one, convert);
    if (convert < n) p = tensor(p, LoccProtocol(copy.repeat(n - convert)));
    return p;
  }
  if (s.head == "random-locc") {
    expect_args(s, 1, 2, spec);
    const std::size_t rounds = s.args.size() > 1 ? parse_u64(s.args[1], spec) : 2;
    return random_protocol(layout, rounds, parse_u64(s.args[0], spec));
  }
  if (s.head == "file") {
    expect_args(s, 1, 1, spec);
    LoccProtocol p = load_protocol(resolve(s.args[0], base_dir));
    if (!(p.input_layout() == layout))
      throw LayoutError("protocol file input " + p.input_layout().to_string() + " is not " + layout.to_string());
    return p;
  }
  throw ParseError("unknown protocol spec '" + std::string(spec) + "'");
}

std::vector<CatalysisInstance> catalysis_instances() {
  std::vector<CatalysisInstance> out;
  auto add = [&](std::string name, const std::string& rho, const std::string& sigma, const std::string& protocol,
                 std::size_t n, std::size_t m) {
    const QState r = make_state(rho);
    out.push_back({std::move(name), r, make_state(sigma), make_protocol(protocol, r, n, m), n, m});
  };
  add("identity-werner-n2", "werner:0.9", "werner:0.9", "identity", 2, 2);
  add("nielsen-n2", "schmidt:0.5,0.5", "schmidt:0.75,0.25", "nielsen:0.75,0.25", 2, 2);
  add("nielsen-n3", "schmidt:0.5,0.5", "schmidt:0.75,0.25", "nielsen:0.75,0.25", 3, 3);
  add("nielsen-partial-n3", "schmidt:0.6,0.4", "schmidt:0.9,0.1", "nielsen:0.9,0.1", 3, 2);
  add("random-locc-werner-n2", "werner:0.85", "werner:0.85", "random-locc:7", 2, 2);
  add("random-locc-haar-n3", "haar:11", "haar:11", "random-locc:11:3", 3, 3);
  add("cycle-ginibre-n3", "ginibre:5:2", "ginibre:5:2", "cycle", 3, 3);
  add("twirl-ginibre-n2", "ginibre:9", "werner:0.25", "twirl", 2, 2);
  return out;
}

std::vector<SuperaddInstance> superadd_instances(std::size_t count, std::uint64_t seed, double epsilon) {
  Rng rng(seed);
  std::uniform_real_distribution<double> source_weight(0.5, 0.7);
  std::uniform_real_distribution<double> noise(0.0, 1.0);
  const SchmidtVector target({0.75, 0.25});
  const QState phi = canonical_pure_state(target);
  const double budget = epsilon * epsilon / 100;
  std::vector<SuperaddInstance> out;
  for (std::size_t i = 0; i < count; ++i) {
    const double x1 = source_weight(rng), x2 = source_weight(rng);
    const SchmidtVector s1({x1, 1 - x1}), s2({x2, 1 - x2});
    const QState pure = tensor(canonical_pure_state(s1), canonical_pure_state(s2));
    // Correlated admixture, small enough that each side stays within budget.
    const Matrix g = linalg::gaussian_matrix(16, 16, rng);
    Matrix junk = g * g.adjoint();
    junk /= junk.trace().real();
    const double w = 0.2 * budget * noise(rng);
    const QState mu12(pure.layout(), (1 - w) * pure.matrix() + w * junk);
    out.push_back({mu12, phi, synthesize_pure_protocol(s1, target), synthesize_pure_protocol(s2, target)});
  }
  return out;
}

}  // namespace corrcat::cli
