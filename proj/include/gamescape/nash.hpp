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
// Exact Nash equilibria of zero-sum matrix games via linear programming:
// the symmetric (antisymmetric-matrix) case used for evaluation matrices,
// the general rectangular case used for relative population performance,
// and maximum-entropy equilibrium selection.

#ifndef GAMESCAPE_NASH_HPP_
#define GAMESCAPE_NASH_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "gamescape/eval.hpp"
#include "gamescape/lp.hpp"
#include "gamescape/matrix.hpp"

namespace gamescape {

struct NashMixture {
  std::vector<double> probs;
  double residual = 0.0;  // most negative entry of pᵀA; ≥ -tol when feasible
  double entropy = 0.0;
};

struct ZeroSumSolution {
  std::vector<double> row_mixture;
  std::vector<double> col_mixture;
  double value = 0.0;
};

struct NashReport {
  double min_payoff = 0.0;       // min entry of pᵀA
  double simplex_residual = 0.0; // |Σp − 1|
  double min_prob = 0.0;
  bool pass = false;
};

inline double shannon_entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p)
    if (x > 0.0) h -= x * std::log(x);
  return h;
}

namespace detail {

// Column player's optimal mixture of the positivized game, via the classic
// normalization: for B > 0, solving max 1ᵀy s.t. By ≤ 1, y ≥ 0 gives
// Σy = 1/value(B) and the mixture y/Σy. Always feasible (y = 0) and always
// bounded (B has positive entries), so only phase two of the simplex runs
// and nonbasic coordinates come back exactly zero.
inline std::pair<std::vector<double>, double> column_solve(const Matrix& a) {
  const double shift = 1.0 + a.max_abs();
  Matrix b = a;
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) += shift;
  const LpSolution sol = solve_lp(b, std::vector<double>(b.rows(), 1.0),
                                  std::vector<double>(b.cols(), 1.0));
  if (sol.status != LpStatus::kOptimal || sol.objective <= 0.0)
    throw std::runtime_error("zero-sum LP failed");
  std::vector<double> q = sol.x;
  for (double& v : q) v /= sol.objective;
  return {std::move(q), 1.0 / sol.objective - shift};
}

}  // namespace detail

// Minimax solution of the zero-sum matrix game A (row player maximizes).
// The value is unique even when the equilibrium is not. Row and column
// mixtures come from two independent primal solves (the row player is the
// column player of -Aᵀ); their values must agree, which doubles as an
// internal consistency check.
inline ZeroSumSolution solve_zero_sum(const Matrix& a, double tol = 1e-9) {
  detail::require(a.rows() >= 1 && a.cols() >= 1, "solve_zero_sum: empty matrix");
  detail::require(a.all_finite(), "solve_zero_sum: non-finite entries");
  auto [q, value] = detail::column_solve(a);

  Matrix neg_t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) neg_t(j, i) = -a(i, j);
  auto [p, neg_value] = detail::column_solve(neg_t);

  if (std::fabs(value + neg_value) > std::max(1e-7, tol * 100.0) * std::max(1.0, std::fabs(value)))
    throw std::runtime_error("zero-sum LP failed: row/column values disagree");

  ZeroSumSolution out;
  out.row_mixture = std::move(p);
  out.col_mixture = std::move(q);
  out.value = value;
  return out;
}

// Nash equilibrium of the symmetric game on an antisymmetric matrix: a
// distribution p with pᵀA ⪰ 0 (the game value is zero). One LP suffices:
// by antisymmetry the column player's optimal mixture is also optimal for
// the row player.
inline NashMixture solve_symmetric_nash(const EvalMatrix& a, double tol = 1e-9) {
  auto [p, value] = detail::column_solve(a.entries());
  if (std::fabs(value) > std::max(1e-7, tol * 100.0))
    throw std::runtime_error("symmetric Nash LP failed: value of antisymmetric game not zero");
  NashMixture out;
  out.probs = std::move(p);
  const std::vector<double> payoff = a.entries().left_multiply(out.probs);
  out.residual = payoff.empty() ? 0.0 : *std::min_element(payoff.begin(), payoff.end());
  out.entropy = shannon_entropy(out.probs);
  return out;
}

inline NashReport verify_nash(const Matrix& a, const std::vector<double>& p, double tol) {
  detail::require(p.size() == a.rows(), "verify_nash: dimension mismatch");
  NashReport report;
  double sum = 0.0;
  report.min_prob = std::numeric_limits<double>::infinity();
  for (double x : p) {
    sum += x;
    report.min_prob = std::min(report.min_prob, x);
  }
  report.simplex_residual = std::fabs(sum - 1.0);
  const std::vector<double> payoff = a.left_multiply(p);
  report.min_payoff = *std::min_element(payoff.begin(), payoff.end());
  report.pass = report.min_prob >= -tol && report.simplex_residual <= tol &&
                report.min_payoff >= -tol;
  return report;
}

// Maximum-entropy Nash selection by conditional gradient (Frank-Wolfe) over
// the Nash polytope {p ∈ Δ : pᵀA ⪰ 0}. Each iteration solves one LP for
// the best feasible direction, then an exact line search on the concave
// 1-D restriction of the entropy. The duality gap ∇H(p)ᵀ(s − p) bounds the
// entropy suboptimality, so termination at `tol` certifies the contract.
// Every iterate is a convex combination of polytope points, hence feasible.
inline NashMixture max_entropy_nash(const EvalMatrix& a, double tol = 1e-8,
                                    int max_iterations = 10000) {
  const std::size_t n = a.size();
  NashMixture start = solve_symmetric_nash(a, tol);
  std::vector<double> p = start.probs;

  // Feasible-direction LP: rows (As)_i ≤ slack plus the two halves of
  // Σs = 1. The slack keeps the polytope numerically non-empty: the exact
  // Nash face satisfies As ≤ 0 only up to solver rounding, and phase one
  // of the simplex needs a sliver of room around it. Badly conditioned
  // matrices (near-duplicate rows from long training runs) occasionally
  // defeat phase one even so; the slack then escalates, and as a last
  // resort the plain LP equilibrium stands in for the max-entropy one.
  Matrix constraints(n + 2, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) constraints(i, j) = a(i, j);
  for (std::size_t j = 0; j < n; ++j) {
    constraints(n, j) = 1.0;
    constraints(n + 1, j) = -1.0;
  }
  std::vector<double> rhs(n + 2, 0.0);
  rhs[n] = 1.0;
  rhs[n + 1] = -1.0;
  double slack = 1e-10 * std::max(1.0, a.entries().max_abs());

  auto entropy_grad = [&](const std::vector<double>& x) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = -std::log(std::max(x[i], 1e-18)) - 1.0;
    return g;
  };

  auto direction_lp = [&](const std::vector<double>& g) {
    LpSolution lp;
    lp.status = LpStatus::kInfeasible;
    while (true) {
      for (std::size_t i = 0; i < n; ++i) rhs[i] = slack;
      try {
        lp = solve_lp(constraints, rhs, g);
      } catch (const std::runtime_error&) {
        lp.status = LpStatus::kInfeasible;  // stalled on degeneracy
      }
      if (lp.status == LpStatus::kOptimal || slack >= 1e-5) return lp;
      slack *= 100.0;
    }
  };

  for (int iter = 0; iter < max_iterations; ++iter) {
    const std::vector<double> g = entropy_grad(p);
    const LpSolution lp = direction_lp(g);
    if (lp.status != LpStatus::kOptimal) {
      if (iter == 0) return start;
      break;
    }
    double gap = 0.0;
    std::vector<double> direction(n);
    for (std::size_t i = 0; i < n; ++i) {
      direction[i] = lp.x[i] - p[i];
      gap += g[i] * direction[i];
    }
    if (gap <= tol) break;

    // d/dγ H(p + γ d) is decreasing; bisect for its root in (0, 1].
    auto slope = [&](double gamma) {
      double s = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double x = p[i] + gamma * direction[i];
        s += direction[i] * (-std::log(std::max(x, 1e-300)) - 1.0);
      }
      return s;
    };
    double gamma = 1.0;
    if (slope(1.0) < 0.0) {
      double lo = 0.0, hi = 1.0;
      for (int b = 0; b < 100; ++b) {
        const double mid = 0.5 * (lo + hi);
        (slope(mid) > 0.0 ? lo : hi) = mid;
      }
      gamma = 0.5 * (lo + hi);
    }
    double moved = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double next = p[i] + gamma * direction[i];
      moved += std::fabs(next - p[i]);
      p[i] = next;
    }
    if (moved < 1e-15) break;
  }

  // Hygiene: drop noise-level coordinates and repair the simplex sum, which
  // drifts by a few ulps over many conditional-gradient iterations.
  double sum = 0.0;
  for (double& x : p) {
    if (x < 1e-15) x = 0.0;
    sum += x;
  }
  if (sum > 0.0 && sum != 1.0)
    for (double& x : p) x /= sum;

  NashMixture out;
  out.probs = std::move(p);
  const std::vector<double> payoff = a.entries().left_multiply(out.probs);
  out.residual = payoff.empty() ? 0.0 : *std::min_element(payoff.begin(), payoff.end());
  out.entropy = shannon_entropy(out.probs);
  return out;
}

}  // namespace gamescape

#endif  // GAMESCAPE_NASH_HPP_
