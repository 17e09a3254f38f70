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
// Population-level measures: relative population performance, effective
// diversity, Nash reweighting, the diversity-as-norm identity, and the
// reduction of a Nash-supported population to a three-strategy
// rock-paper-scissors meta-game.

#ifndef GAMESCAPE_METRICS_HPP_
#define GAMESCAPE_METRICS_HPP_

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "gamescape/eval.hpp"
#include "gamescape/matrix.hpp"
#include "gamescape/nash.hpp"
#include "gamescape/types.hpp"

namespace gamescape {

struct PerfReport {
  double value = 0.0;
  std::vector<double> row_mixture;
  std::vector<double> col_mixture;
};

// Value of the zero-sum game between two populations at equilibrium:
// perf(P, Q) = pᵀ A_{P,Q} q. Positive means P beats Q. The value does not
// depend on which equilibrium the solver returns.
inline PerfReport relative_performance(const Population& p, const Population& q,
                                       const GameDefinition& game, const EvalConfig& cfg = {}) {
  detail::require(p.game_id == q.game_id, "relative_performance: populations play different games");
  const Matrix a = cross_eval_matrix(game, p, q, cfg);
  ZeroSumSolution sol = solve_zero_sum(a);
  PerfReport report;
  report.value = sol.value;
  report.row_mixture = std::move(sol.row_mixture);
  report.col_mixture = std::move(sol.col_mixture);
  return report;
}

inline PerfReport relative_performance(const Matrix& cross) {
  ZeroSumSolution sol = solve_zero_sum(cross);
  return PerfReport{sol.value, std::move(sol.row_mixture), std::move(sol.col_mixture)};
}

// Σ_{ij} ⌊A_ij⌋₊ p_i p_j: how much the Nash-supported agents exploit each
// other. Zero when one agent dominates.
inline double effective_diversity(const EvalMatrix& a, const NashMixture& nash) {
  detail::require(nash.probs.size() == a.size(), "effective_diversity: dimension mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (nash.probs[i] == 0.0) continue;
    for (std::size_t j = 0; j < a.size(); ++j) {
      const double v = a(i, j);
      if (v > 0.0) acc += v * nash.probs[i] * nash.probs[j];
    }
  }
  return acc;
}

// Diversity is defined against the maximum-entropy Nash so that it is
// well-defined when the equilibrium is not unique.
inline double effective_diversity(const EvalMatrix& a) {
  return effective_diversity(a, max_entropy_nash(a));
}

// Entrywise A_ij · p_i · p_j. For any Nash p the result has all rows and
// columns summing to zero.
inline Matrix nash_reweight(const EvalMatrix& a, const NashMixture& nash) {
  detail::require(nash.probs.size() == a.size(), "nash_reweight: dimension mismatch");
  const std::size_t n = a.size();
  Matrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = a(i, j) * nash.probs[i] * nash.probs[j];
  return out;
}

// ½‖p ⊙ A ⊙ p‖_{1,1}; equals effective diversity by antisymmetry.
inline double diversity_l11(const EvalMatrix& a, const NashMixture& nash) {
  const Matrix w = nash_reweight(a, nash);
  double acc = 0.0;
  for (std::size_t i = 0; i < w.rows(); ++i)
    for (std::size_t j = 0; j < w.cols(); ++j) acc += std::fabs(w(i, j));
  return acc / 2.0;
}

// Mass partition of a Nash mixture around an anchor agent: the anchor
// itself, the supported agents it beats, and the rest of the support.
// Evaluating the three mixture agents against each other yields an
// antisymmetric meta-game of rock-paper-scissors form with a single
// magnitude alpha.
struct RpsReduction {
  std::vector<double> weights_r;
  std::vector<double> weights_p;
  std::vector<double> weights_s;
  Matrix meta_matrix;  // 3×3
  double alpha = 0.0;
};

inline RpsReduction rps_reduce(const EvalMatrix& a, const NashMixture& nash, std::size_t anchor,
                               double support_tol = 1e-12) {
  const std::size_t n = a.size();
  detail::require(nash.probs.size() == n, "rps_reduce: dimension mismatch");
  detail::require(anchor < n, "rps_reduce: anchor out of range");
  detail::require(nash.probs[anchor] > support_tol, "rps_reduce: anchor has no Nash mass");
  std::size_t support = 0;
  for (double x : nash.probs)
    if (x > support_tol) ++support;
  detail::require(support >= 3, "rps_reduce: Nash support must contain at least three agents");

  RpsReduction red;
  red.weights_r.assign(n, 0.0);
  red.weights_p.assign(n, 0.0);
  red.weights_s.assign(n, 0.0);
  red.weights_r[anchor] = nash.probs[anchor];
  for (std::size_t i = 0; i < n; ++i) {
    if (i == anchor || nash.probs[i] <= support_tol) continue;
    // Ties (phi = 0) go with the agents the anchor does not beat.
    if (a(anchor, i) > 0.0)
      red.weights_p[i] = nash.probs[i];
    else
      red.weights_s[i] = nash.probs[i];
  }

  const std::vector<double>* groups[3] = {&red.weights_r, &red.weights_p, &red.weights_s};
  red.meta_matrix = Matrix(3, 3);
  for (int g = 0; g < 3; ++g)
    for (int h = 0; h < 3; ++h) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double wi = (*groups[g])[i];
        if (wi == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) {
          const double wj = (*groups[h])[j];
          if (wj != 0.0) acc += wi * wj * a(i, j);
        }
      }
      red.meta_matrix(g, h) = acc;
    }
  red.alpha = red.meta_matrix(0, 1);
  return red;
}

}  // namespace gamescape

#endif  // GAMESCAPE_METRICS_HPP_
