// Copyright 2026 The Gamescape Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GAMESCAPE_EIGEN_HPP_
#define GAMESCAPE_EIGEN_HPP_

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "gamescape/matrix.hpp"

namespace gamescape {

// Eigendecomposition of a real symmetric matrix. Eigenvalues are sorted in
// descending order; eigenvectors are the matching columns of `vectors`.
struct SymmetricEigen {
  std::vector<double> values;
  Matrix vectors;
};

// Cyclic Jacobi iteration. Quadratically convergent and accurate to machine
// precision, which the rank and reconstruction tolerances rely on. O(n^3)
// per sweep is irrelevant at the population sizes used here.
inline SymmetricEigen eigh(const Matrix& input, int max_sweeps = 64) {
  detail::require(input.square(), "eigh: matrix must be square");
  const std::size_t n = input.rows();
  Matrix a = input;
  Matrix v = Matrix::identity(n);

  auto off_norm = [&]() {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
    return std::sqrt(2.0 * s);
  };

  const double scale = std::max(a.max_abs(), 1e-300);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (off_norm() <= 1e-15 * scale * static_cast<double>(n)) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::fabs(apq) <= 1e-300) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> diag(n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return diag[x] > diag[y]; });

  SymmetricEigen out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = diag[order[j]];
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  return out;
}

// Thin SVD built on the symmetric eigensolver: V and σ² from AᵀA, then
// U = A V Σ⁻¹ on the numerically nonzero part.
struct Svd {
  std::vector<double> singular_values;  // descending
  Matrix u;                             // m × r columns for σ > cutoff
  Matrix v;                             // n × r
};

inline Svd thin_svd(const Matrix& a, double rel_cutoff = 1e-13) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  Matrix gram(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < m; ++k) acc += a(k, i) * a(k, j);
      gram(i, j) = acc;
      gram(j, i) = acc;
    }
  SymmetricEigen eig = eigh(gram);

  Svd out;
  const double top = eig.values.empty() ? 0.0 : std::max(eig.values.front(), 0.0);
  const double cutoff = std::sqrt(std::max(top, 0.0)) * rel_cutoff;
  std::vector<std::size_t> keep;
  out.singular_values.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double sigma = std::sqrt(std::max(eig.values[j], 0.0));
    out.singular_values[j] = sigma;
    if (sigma > cutoff) keep.push_back(j);
  }
  out.u = Matrix(m, keep.size());
  out.v = Matrix(n, keep.size());
  for (std::size_t c = 0; c < keep.size(); ++c) {
    const std::size_t j = keep[c];
    const double inv = 1.0 / out.singular_values[j];
    for (std::size_t i = 0; i < n; ++i) out.v(i, c) = eig.vectors(i, j);
    for (std::size_t i = 0; i < m; ++i) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += a(i, k) * eig.vectors(k, j);
      out.u(i, c) = acc * inv;
    }
  }
  out.singular_values.resize(keep.size());
  for (std::size_t c = 0; c < keep.size(); ++c)
    out.singular_values[c] = std::sqrt(std::max(eig.values[keep[c]], 0.0));
  return out;
}

// Solves a square linear system by Gaussian elimination with partial
// pivoting. Throws on (numerical) singularity.
inline std::vector<double> solve_linear(Matrix a, std::vector<double> b) {
  detail::require(a.square() && a.rows() == b.size(), "solve_linear: shape mismatch");
  const std::size_t n = a.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(a(r, col)) > std::fabs(a(pivot, col))) pivot = r;
    if (std::fabs(a(pivot, col)) < 1e-300)
      throw std::runtime_error("solve_linear: singular system");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(pivot, j));
      std::swap(b[col], b[pivot]);
    }
    const double inv = 1.0 / a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a(r, col) * inv;
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double acc = b[i];
    for (std::size_t j = i + 1; j < n; ++j) acc -= a(i, j) * x[j];
    x[i] = acc / a(i, i);
  }
  return x;
}

}  // namespace gamescape

#endif  // GAMESCAPE_EIGEN_HPP_
