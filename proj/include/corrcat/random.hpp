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

// Seeded samplers for matrices. Every sampler draws from a caller-owned engine
// so that a fixed seed reproduces the full sequence.

#include <corrcat/linalg.hpp>

#include <cstdint>
#include <random>

namespace corrcat {

using Rng = std::mt19937_64;

namespace linalg {

/// Entries i.i.d. complex normal with E|z|² = 1.
template <typename Engine>
Matrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, Engine& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  const double scale = 1.0 / std::sqrt(2.0);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im) * scale;
    }
  return g;
}

/// Haar-random isometry (rows ≥ cols): QR of a Ginibre matrix with the phases
/// of R's diagonal divided out.
template <typename Engine>
Matrix haar_isometry(Eigen::Index rows, Eigen::Index cols, Engine& rng) {
  Matrix g = gaussian_matrix(rows, cols, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < cols; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0) q.col(j) *= d / mag;
  }
  return q;
}

template <typename Engine>
Matrix haar_unitary(Eigen::Index dim, Engine& rng) {
  return haar_isometry(dim, dim, rng);
}

/// Orthonormalizes the columns of an arbitrary full-column-rank matrix
/// (polar factor), which maps nearby inputs to nearby isometries.
inline Matrix polar_isometry(const Matrix& g) {
  Eigen::JacobiSVD<Matrix> svd(g, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace linalg
}  // namespace corrcat
