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
//
// Combinatorial Hodge decomposition of antisymmetric payoff matrices into a
// transitive (gradient) part and a cyclic (divergence-free) part, with the
// grad / div / curl operators on flows over the complete graph.

#ifndef GAMESCAPE_HODGE_HPP_
#define GAMESCAPE_HODGE_HPP_

#include <cmath>
#include <cstddef>
#include <vector>

#include "gamescape/eval.hpp"
#include "gamescape/matrix.hpp"

namespace gamescape {

// div(A) = (1/n) A·1 — each agent's average payoff against the population,
// which acts as its rating.
inline std::vector<double> divergence(const EvalMatrix& a) {
  const std::size_t n = a.size();
  std::vector<double> d(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += a(i, j);
    d[i] = acc / static_cast<double>(n);
  }
  return d;
}

// grad(r) = r·1ᵀ − 1·rᵀ, the flow with entries r_i − r_j.
inline Matrix grad_flow(const std::vector<double>& r) {
  for (double v : r) detail::require(std::isfinite(v), "grad_flow: non-finite rating");
  const std::size_t n = r.size();
  Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g(i, j) = r[i] - r[j];
  return g;
}

inline double curl_entry(const EvalMatrix& a, std::size_t i, std::size_t j, std::size_t k) {
  return a(i, j) + a(j, k) - a(i, k);
}

// Dense n×n×n curl tensor; only materialized for small populations, the
// entries are available on demand through curl_entry above.
class CurlTensor {
 public:
  explicit CurlTensor(const EvalMatrix& a) : n_(a.size()), data_(n_ * n_ * n_) {
    detail::require(n_ <= kMaterializeLimit, "curl tensor is only materialized for n <= 64");
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        for (std::size_t k = 0; k < n_; ++k)
          data_[(i * n_ + j) * n_ + k] = curl_entry(a, i, j, k);
  }

  static constexpr std::size_t kMaterializeLimit = 64;

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * n_ + j) * n_ + k];
  }
  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::fabs(v));
    return m;
  }

 private:
  std::size_t n_;
  std::vector<double> data_;
};

inline CurlTensor curl(const EvalMatrix& a) { return CurlTensor(a); }

// A = grad(div(A)) ⊕ (A − grad(div(A))): the two parts are orthogonal under
// the Frobenius inner product, the cyclic part is divergence-free, and the
// ratings are the divergence itself.
struct HodgeParts {
  Matrix transitive;
  Matrix cyclic;
  std::vector<double> ratings;
};

inline HodgeParts hodge_decompose(const EvalMatrix& a) {
  HodgeParts parts;
  parts.ratings = divergence(a);
  parts.transitive = grad_flow(parts.ratings);
  parts.cyclic = a.entries() - parts.transitive;
  return parts;
}

inline double frobenius_inner(const Matrix& a, const Matrix& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * b(i, j);
  return acc;
}

}  // namespace gamescape

#endif  // GAMESCAPE_HODGE_HPP_
