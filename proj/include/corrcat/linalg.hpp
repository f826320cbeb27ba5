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

// Dense kernels shared by every module. Templated on the Eigen expression so
// they accept blocks, maps and products without forcing a copy at the call site.

#include <Eigen/Dense>

#include <cmath>
#include <complex>

namespace corrcat {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace linalg {

/// Kronecker product a ⊗ b.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Result = Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index br = b.rows(), bc = b.cols();
  Result out(a.rows() * br, a.cols() * bc);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * br, j * bc, br, bc) = a(i, j) * b;
  return out;
}

/// Largest entrywise deviation from Hermiticity.
template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real hermiticity_defect(
    const Eigen::MatrixBase<Derived>& m) {
  if (m.size() == 0) return 0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// Σ|λ_i| for a Hermitian argument (the trace norm without an SVD).
template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real hermitian_trace_norm(
    const Eigen::MatrixBase<Derived>& m) {
  using Plain = typename Derived::PlainObject;
  Plain h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Plain> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

/// Sum of singular values, valid for any square or rectangular argument.
template <typename Derived>
typename Eigen::NumTraits<typename Derived::Scalar>::Real trace_norm(
    const Eigen::MatrixBase<Derived>& m) {
  using Plain = typename Derived::PlainObject;
  Eigen::JacobiSVD<Plain> svd(m.eval());
  return svd.singularValues().sum();
}

/// Principal square root of a PSD matrix; small negative eigenvalues are clipped.
template <typename Derived>
typename Derived::PlainObject psd_sqrt(const Eigen::MatrixBase<Derived>& m) {
  using Plain = typename Derived::PlainObject;
  Plain h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Plain> es(h);
  auto roots = es.eigenvalues().cwiseMax(0).cwiseSqrt().eval();
  return es.eigenvectors() * roots.asDiagonal() * es.eigenvectors().adjoint();
}

/// Shannon entropy in bits of a probability vector. Entries below `cutoff`
/// contribute exactly zero.
template <typename Derived>
double entropy_bits(const Eigen::MatrixBase<Derived>& probs, double cutoff = 1e-12) {
  double s = 0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    const double p = static_cast<double>(probs(i));
    if (p >= cutoff) s -= p * std::log2(p);
  }
  return s;
}

/// Computational basis vector |index⟩ of a given dimension.
inline Vector basis_vector(Eigen::Index dim, Eigen::Index index) {
  Vector v = Vector::Zero(dim);
  v(index) = 1;
  return v;
}

}  // namespace linalg
}  // namespace corrcat
