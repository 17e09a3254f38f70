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
// Empirical gamescape analytics: numerical rank, low-dimensional embeddings
// (Schur, PCA, SVD), 2-D convex hull area, the redundancy LP, and synthetic
// payoff generation.

#ifndef GAMESCAPE_ANALYTICS_HPP_
#define GAMESCAPE_ANALYTICS_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gamescape/eigen.hpp"
#include "gamescape/eval.hpp"
#include "gamescape/hodge.hpp"
#include "gamescape/lp.hpp"
#include "gamescape/matrix.hpp"
#include "gamescape/rng.hpp"
#include "gamescape/types.hpp"

namespace gamescape {

namespace detail {

// Orthogonal pairs (a_k, b_k) with A a_k = λ_k b_k, λ_k > 0, extracted from
// the eigenspaces of the positive semidefinite matrix -A². Each pair spans
// one invariant plane of A; together they give the real block form
// A = Σ_k λ_k (b_k a_kᵀ − a_k b_kᵀ).
struct SpectralBlock {
  double lambda;
  std::vector<double> a;
  std::vector<double> b;
};

inline std::vector<SpectralBlock> antisymmetric_blocks(const EvalMatrix& m) {
  const std::size_t n = m.size();
  Matrix s(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += m(i, k) * m(j, k);
      s(i, j) = acc;
      s(j, i) = acc;
    }
  const SymmetricEigen eig = eigh(s);
  const double top = eig.values.empty() ? 0.0 : std::max(eig.values.front(), 0.0);
  const double cutoff = std::sqrt(top) * 1e-13;

  std::vector<SpectralBlock> blocks;
  std::vector<std::vector<double>> taken;  // orthonormal columns already used
  auto orthogonalize = [&](std::vector<double> v) {
    for (int pass = 0; pass < 2; ++pass) {  // classic twice-is-enough reorthogonalization
      for (const std::vector<double>& t : taken) {
        const double c = dot(t, v);
        for (std::size_t i = 0; i < n; ++i) v[i] -= c * t[i];
      }
    }
    return v;
  };
  for (std::size_t col = 0; col < n; ++col) {
    if (eig.values[col] <= 0.0 || std::sqrt(eig.values[col]) <= cutoff) break;
    std::vector<double> a(n);
    for (std::size_t i = 0; i < n; ++i) a[i] = eig.vectors(i, col);
    a = orthogonalize(std::move(a));
    const double norm_a = std::sqrt(dot(a, a));
    if (norm_a < 0.5) continue;  // partner of an already-extracted vector
    for (double& x : a) x /= norm_a;

    std::vector<double> b = m.entries().multiply(a);
    const double lambda = std::sqrt(dot(b, b));
    if (lambda <= cutoff || lambda <= 0.0) continue;
    for (double& x : b) x /= lambda;
    b = orthogonalize(std::move(b));
    const double norm_b = std::sqrt(dot(b, b));
    if (norm_b < 0.5) continue;
    for (double& x : b) x /= norm_b;

    // Deterministic sign: first significant entry of b nonnegative.
    double ref = 0.0;
    for (double x : b)
      if (std::fabs(x) > 1e-9) {
        ref = x;
        break;
      }
    if (ref < 0.0)
      for (std::size_t i = 0; i < n; ++i) {
        a[i] = -a[i];
        b[i] = -b[i];
      }
    taken.push_back(a);
    taken.push_back(b);
    blocks.push_back(SpectralBlock{lambda, std::move(a), std::move(b)});
  }
  std::stable_sort(blocks.begin(), blocks.end(),
                   [](const SpectralBlock& x, const SpectralBlock& y) {
                     return x.lambda > y.lambda;
                   });
  return blocks;
}

}  // namespace detail

// Rank of an antisymmetric matrix at a relative singular-value tolerance.
// Singular values come in equal pairs, so blocks are counted and the result
// is always even.
inline int numerical_rank(const EvalMatrix& a, double tol = 1e-10) {
  const std::vector<detail::SpectralBlock> blocks = detail::antisymmetric_blocks(a);
  if (blocks.empty()) return 0;
  const double top = blocks.front().lambda;
  int rank = 0;
  for (const detail::SpectralBlock& blk : blocks)
    if (blk.lambda > tol * top) rank += 2;
  return rank;
}

enum class EmbeddingMethod { kSchur, kPca, kSvd };

inline std::string embedding_method_name(EmbeddingMethod m) {
  switch (m) {
    case EmbeddingMethod::kSchur: return "schur";
    case EmbeddingMethod::kPca: return "pca";
    case EmbeddingMethod::kSvd: return "svd";
  }
  return "unknown";
}

struct Embedding {
  Matrix coords;  // n × d
  EmbeddingMethod method = EmbeddingMethod::kSchur;
  double recon_error = 0.0;
};

// Schur-form embedding of an antisymmetric matrix. Each spectral block
// (λ, a, b) contributes the coordinate pair √λ·(b_i, a_i), so the payoff is
// recovered blockwise from plain cross products:
//     A_ij = Σ_k x_ik₁ x_jk₂ − x_ik₂ x_jk₁.
// The √λ scaling makes the embedding behave like actual agent coordinates
// in a (sum of) disc game(s); in particular any two point sets realizing
// the same payoffs differ by a unimodular linear map, so convex hull areas
// are invariant to redundant agents. recon_error is the Frobenius distance
// between A and the cross-product reconstruction from the first d/2 blocks;
// it vanishes when d reaches the rank.
inline Embedding schur_embedding(const EvalMatrix& a, int d) {
  detail::require(d >= 2 && d % 2 == 0, "schur_embedding: d must be a positive even number");
  const std::size_t n = a.size();
  const std::vector<detail::SpectralBlock> blocks = detail::antisymmetric_blocks(a);
  const std::size_t use = std::min(blocks.size(), static_cast<std::size_t>(d / 2));

  Embedding out;
  out.method = EmbeddingMethod::kSchur;
  out.coords = Matrix(n, static_cast<std::size_t>(d));
  Matrix recon(n, n);
  for (std::size_t k = 0; k < use; ++k) {
    const detail::SpectralBlock& blk = blocks[k];
    const double scale = std::sqrt(blk.lambda);
    for (std::size_t i = 0; i < n; ++i) {
      out.coords(i, 2 * k) = scale * blk.b[i];
      out.coords(i, 2 * k + 1) = scale * blk.a[i];
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        recon(i, j) += blk.lambda * (blk.b[i] * blk.a[j] - blk.a[i] * blk.b[j]);
  }
  out.recon_error = (a.entries() - recon).frobenius_norm();
  return out;
}

// Rows of the matrix as data points, projected on the top principal
// components (column means removed).
inline Embedding pca_embedding(const EvalMatrix& a, int d) {
  const std::size_t n = a.size();
  detail::require(d >= 1 && static_cast<std::size_t>(d) <= n,
                  "pca_embedding: d must lie in [1, n]");
  Matrix centered = a.entries();
  for (std::size_t j = 0; j < n; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += centered(i, j);
    mean /= static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) centered(i, j) -= mean;
  }
  const Svd svd = thin_svd(centered);
  const std::size_t use = std::min(svd.singular_values.size(), static_cast<std::size_t>(d));

  Embedding out;
  out.method = EmbeddingMethod::kPca;
  out.coords = Matrix(n, static_cast<std::size_t>(d));
  for (std::size_t c = 0; c < use; ++c)
    for (std::size_t i = 0; i < n; ++i)
      out.coords(i, c) = svd.u(i, c) * svd.singular_values[c];
  Matrix recon(n, n);
  for (std::size_t c = 0; c < use; ++c)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        recon(i, j) += out.coords(i, c) * svd.v(j, c);
  out.recon_error = (centered - recon).frobenius_norm();
  return out;
}

// Uncentered variant keeping the dimensions of largest singular value.
inline Embedding svd_embedding(const EvalMatrix& a, int d) {
  const std::size_t n = a.size();
  detail::require(d >= 1 && static_cast<std::size_t>(d) <= n,
                  "svd_embedding: d must lie in [1, n]");
  const Svd svd = thin_svd(a.entries());
  const std::size_t use = std::min(svd.singular_values.size(), static_cast<std::size_t>(d));

  Embedding out;
  out.method = EmbeddingMethod::kSvd;
  out.coords = Matrix(n, static_cast<std::size_t>(d));
  for (std::size_t c = 0; c < use; ++c)
    for (std::size_t i = 0; i < n; ++i)
      out.coords(i, c) = svd.u(i, c) * svd.singular_values[c];
  Matrix recon(n, n);
  for (std::size_t c = 0; c < use; ++c)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        recon(i, j) += out.coords(i, c) * svd.v(j, c);
  out.recon_error = (a.entries() - recon).frobenius_norm();
  return out;
}

// Convex hull area by monotone chain + shoelace. Degenerate inputs
// (fewer than three distinct points, collinear sets) have area zero.
inline double hull_area_2d(std::vector<Point2> points) {
  for (const Point2& p : points)
    detail::require(std::isfinite(p[0]) && std::isfinite(p[1]), "hull_area_2d: non-finite point");
  if (points.size() < 3) return 0.0;
  std::sort(points.begin(), points.end(), [](const Point2& a, const Point2& b) {
    if (a[0] != b[0]) return a[0] < b[0];
    return a[1] < b[1];
  });
  auto cross = [](const Point2& o, const Point2& a, const Point2& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
  };
  std::vector<Point2> hull(2 * points.size());
  std::size_t h = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {  // lower
    while (h >= 2 && cross(hull[h - 2], hull[h - 1], points[i]) <= 0.0) --h;
    hull[h++] = points[i];
  }
  for (std::size_t i = points.size() - 1, low = h + 1; i-- > 0;) {  // upper
    while (h >= low && cross(hull[h - 2], hull[h - 1], points[i]) <= 0.0) --h;
    hull[h++] = points[i];
  }
  if (h < 4) return 0.0;  // fewer than 3 hull vertices (closed chain repeats the start)
  hull.resize(h - 1);
  double area2 = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point2& p = hull[i];
    const Point2& q = hull[(i + 1) % hull.size()];
    area2 += p[0] * q[1] - p[1] * q[0];
  }
  return std::fabs(area2) / 2.0;
}

// First two Schur coordinates of every agent, as points.
inline std::vector<Point2> schur_points_2d(const EvalMatrix& a) {
  const Embedding e = schur_embedding(a, 2);
  std::vector<Point2> pts(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) pts[i] = {e.coords(i, 0), e.coords(i, 1)};
  return pts;
}

inline double schur_hull_area(const EvalMatrix& a) {
  return hull_area_2d(schur_points_2d(a));
}

// True when row i is within `tol` (∞-norm) of a convex combination of the
// other rows, i.e. the agent adds nothing to the empirical gamescape.
// Solved as an LP over mixture weights plus one slack bound.
inline bool is_redundant(const EvalMatrix& a, std::size_t row, double tol) {
  const std::size_t n = a.size();
  detail::require(n >= 2, "is_redundant: need at least two agents");
  detail::require(row < n, "is_redundant: row out of range");

  std::vector<std::size_t> others;
  for (std::size_t j = 0; j < n; ++j)
    if (j != row) others.push_back(j);
  const std::size_t vars = others.size() + 1;  // mixture weights + t
  Matrix constraints(2 * n + 2, vars);
  std::vector<double> rhs(2 * n + 2, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t c = 0; c < others.size(); ++c) {
      constraints(2 * k, c) = a(others[c], k);
      constraints(2 * k + 1, c) = -a(others[c], k);
    }
    constraints(2 * k, vars - 1) = -1.0;
    constraints(2 * k + 1, vars - 1) = -1.0;
    rhs[2 * k] = a(row, k);
    rhs[2 * k + 1] = -a(row, k);
  }
  for (std::size_t c = 0; c < others.size(); ++c) {
    constraints(2 * n, c) = 1.0;
    constraints(2 * n + 1, c) = -1.0;
  }
  rhs[2 * n] = 1.0;
  rhs[2 * n + 1] = -1.0;

  std::vector<double> objective(vars, 0.0);
  objective[vars - 1] = -1.0;  // minimize the ∞-norm slack
  const LpSolution sol = solve_lp(constraints, rhs, objective);
  if (sol.status != LpStatus::kOptimal)
    throw std::runtime_error("is_redundant: LP failed");
  return -sol.objective <= tol;
}

// ---------------------------------------------------------------------------
// Synthetic payoffs

enum class SynthKind { kRandom, kAlmostTransitive, kAlmostCyclic, kMixed, kAlmostMonotonic };

inline SynthKind synth_kind_from_string(const std::string& s) {
  if (s == "random") return SynthKind::kRandom;
  if (s == "almost_transitive") return SynthKind::kAlmostTransitive;
  if (s == "almost_cyclic") return SynthKind::kAlmostCyclic;
  if (s == "mixed") return SynthKind::kMixed;
  if (s == "almost_monotonic") return SynthKind::kAlmostMonotonic;
  throw std::invalid_argument("unknown synthetic payoff kind: " + s);
}

inline std::string synth_kind_name(SynthKind k) {
  switch (k) {
    case SynthKind::kRandom: return "random";
    case SynthKind::kAlmostTransitive: return "almost_transitive";
    case SynthKind::kAlmostCyclic: return "almost_cyclic";
    case SynthKind::kMixed: return "mixed";
    case SynthKind::kAlmostMonotonic: return "almost_monotonic";
  }
  return "unknown";
}

struct SynthSpec {
  SynthKind kind = SynthKind::kRandom;
  int n = 40;
  double sigma = 0.02;
  std::uint64_t seed = 0;
  double rating_scale = 1.0;  // noiseless ratings span [-scale, scale]
};

// Synthetic evaluation matrices:
//   random            (E − Eᵀ)/2 for E with i.i.d. Normal(0, σ) entries
//   almost_transitive gradient flow of equally spaced ratings, plus noise
//   almost_cyclic     disc game on centered points of the unit circle
//                     (divergence-free by construction), plus noise
//   mixed             0.65 · almost_transitive + 0.35 · almost_cyclic
//   almost_monotonic  sign of the noiseless transitive part, plus noise
inline EvalMatrix synth_payoff(const SynthSpec& spec) {
  detail::require(spec.n >= 2, "synth_payoff: n must be at least 2");
  detail::require(spec.sigma >= 0.0, "synth_payoff: sigma must be nonnegative");
  const std::size_t n = static_cast<std::size_t>(spec.n);
  Rng rng(Rng::mix(spec.seed, 0x5d7eu));

  Matrix noise(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) noise(i, j) = rng.normal(0.0, spec.sigma);
  Matrix random_part(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = (noise(i, j) - noise(j, i)) / 2.0;
      random_part(i, j) = v;
      random_part(j, i) = -v;
    }
  if (spec.kind == SynthKind::kRandom) return EvalMatrix(std::move(random_part), 0.0);

  std::vector<double> ratings(n);
  for (std::size_t i = 0; i < n; ++i)
    ratings[i] = spec.rating_scale *
                 (-1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n - 1));

  auto transitive_part = [&]() {
    Matrix t(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double v = ratings[i] - ratings[j];
        t(i, j) = v;
        t(j, i) = -v;
      }
    return t;
  };

  auto cyclic_part = [&]() {
    std::vector<Point2> pts(n);
    Point2 mean = {0.0, 0.0};
    const double two_pi = 6.283185307179586476925286766559;
    for (Point2& p : pts) {
      const double angle = rng.uniform(0.0, two_pi);
      p = {std::cos(angle), std::sin(angle)};
      mean[0] += p[0];
      mean[1] += p[1];
    }
    mean[0] /= static_cast<double>(n);
    mean[1] /= static_cast<double>(n);
    for (Point2& p : pts) {
      p[0] -= mean[0];
      p[1] -= mean[1];
    }
    Matrix c(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double v = pts[i][0] * pts[j][1] - pts[i][1] * pts[j][0];
        c(i, j) = v;
        c(j, i) = -v;
      }
    return c;
  };

  Matrix out;
  switch (spec.kind) {
    case SynthKind::kAlmostTransitive:
      out = transitive_part() + random_part;
      break;
    case SynthKind::kAlmostCyclic:
      out = cyclic_part() + random_part;
      break;
    case SynthKind::kMixed:
      out = (transitive_part() + random_part).scaled(0.65) +
            (cyclic_part() + random_part).scaled(0.35);
      break;
    case SynthKind::kAlmostMonotonic: {
      Matrix t = transitive_part();
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          t(i, j) = t(i, j) > 0.0 ? 1.0 : (t(i, j) < 0.0 ? -1.0 : 0.0);
      out = t + random_part;
      break;
    }
    case SynthKind::kRandom:
      break;  // handled above
  }
  return EvalMatrix(std::move(out), 0.0);
}

}  // namespace gamescape

#endif  // GAMESCAPE_ANALYTICS_HPP_
