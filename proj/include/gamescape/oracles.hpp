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
// Approximate best-response oracles. Objectives are weighted mixtures of
// single-opponent payoffs, optionally rectified (losses clamped to zero).
// Two oracles are provided: projected gradient ascent for differentiable
// games and a (1+λ) evolution strategy for black-box payoffs. Every
// objective or gradient evaluation is counted against the budget, which is
// the unit of computational cost experiments are compared under.

#ifndef GAMESCAPE_ORACLES_HPP_
#define GAMESCAPE_ORACLES_HPP_

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gamescape/rng.hpp"
#include "gamescape/types.hpp"

namespace gamescape {

// Weighted objective v ↦ Σ_i w_i · φ(v, opp_i), or with the rectifier,
// v ↦ Σ_i w_i · ⌊φ(v, opp_i)⌋₊. Unrectified weights form a distribution;
// rectified weights only need to be nonnegative.
struct MixtureObjective {
  const GameDefinition* game = nullptr;
  Population opponents;
  std::vector<double> weights;
  bool rectified = false;

  double evaluate(const Agent& v) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < opponents.size(); ++i) {
      if (weights[i] == 0.0) continue;
      const double p = game->phi(v, opponents.agents[i], 0);
      acc += weights[i] * (rectified ? std::max(p, 0.0) : p);
    }
    return acc;
  }

  // Rectified terms contribute gradient where they win or tie: losses are
  // clamped flat, but at an exact tie the one-sided ascent derivative of
  // ⌊φ⌋₊ is ∇φ, and dropping it would freeze training against tied
  // opponents (in particular an agent always ties itself).
  std::vector<double> gradient(const Agent& v) const {
    detail::require(static_cast<bool>(game->grad), "objective gradient needs a game gradient");
    std::vector<double> g(v.params.size(), 0.0);
    for (std::size_t i = 0; i < opponents.size(); ++i) {
      if (weights[i] == 0.0) continue;
      if (rectified && game->phi(v, opponents.agents[i], 0) < 0.0) continue;
      const std::vector<double> gi = game->grad(v, opponents.agents[i]);
      for (std::size_t d = 0; d < g.size(); ++d) g[d] += weights[i] * gi[d];
    }
    return g;
  }
};

inline MixtureObjective mixture_objective(const Population& opponents,
                                          std::vector<double> weights, bool rectified,
                                          const GameDefinition& game) {
  detail::require(weights.size() == opponents.size(),
                  "mixture_objective: one weight per opponent required");
  double sum = 0.0;
  for (double w : weights) {
    detail::require(w >= 0.0, "mixture_objective: negative weight");
    sum += w;
  }
  if (!rectified)
    detail::require(std::fabs(sum - 1.0) <= 1e-12,
                    "mixture_objective: unrectified weights must sum to one");
  return MixtureObjective{&game, opponents, std::move(weights), rectified};
}

// Step limits and accounting for one oracle call. `queries_used` advances
// by one per objective or analytic-gradient evaluation, and by 2·dim per
// finite-difference gradient.
struct OracleBudget {
  long long queries_used = 0;
  int step_count = 50;
  double step_size = 0.1;
  double epsilon = 1e-6;      // required improvement
  double fd_step = 1e-5;      // central-difference step when no gradient exists
  std::uint64_t seed = 0;     // evolutionary oracle stream
  int es_lambda = 8;
  double es_sigma = 0.5;
  int es_stall_limit = 10;
};

struct OracleResult {
  Agent agent;
  bool improved = false;
  double objective_before = 0.0;
  double objective_after = 0.0;
};

namespace detail {

inline std::vector<double> finite_difference_gradient(const MixtureObjective& objective,
                                                      Agent v, OracleBudget& budget) {
  std::vector<double> g(v.params.size());
  for (std::size_t d = 0; d < g.size(); ++d) {
    const double saved = v.params[d];
    v.params[d] = saved + budget.fd_step;
    const double up = objective.evaluate(v);
    v.params[d] = saved - budget.fd_step;
    const double down = objective.evaluate(v);
    v.params[d] = saved;
    budget.queries_used += 2;
    g[d] = (up - down) / (2.0 * budget.fd_step);
  }
  return g;
}

}  // namespace detail

// Projected gradient ascent on the mixture objective. Uses the game's
// analytic gradient when available, otherwise central finite differences.
// Runs exactly step_count steps and reports whether the final agent beats
// the start by more than epsilon.
inline OracleResult gradient_ascent_oracle(const Agent& start, const MixtureObjective& objective,
                                           OracleBudget& budget) {
  OracleResult result;
  result.agent = start;
  result.objective_before = objective.evaluate(start);
  budget.queries_used += 1;

  const GameDefinition& game = *objective.game;
  for (int step = 0; step < budget.step_count; ++step) {
    std::vector<double> g;
    if (game.grad) {
      g = objective.gradient(result.agent);
      budget.queries_used += 1;
    } else {
      g = detail::finite_difference_gradient(objective, result.agent, budget);
    }
    for (double gi : g)
      detail::require(std::isfinite(gi), "gradient oracle: non-finite gradient");
    for (std::size_t d = 0; d < g.size(); ++d)
      result.agent.params[d] += budget.step_size * g[d];
    if (game.project) game.project(result.agent);
  }

  result.objective_after = objective.evaluate(result.agent);
  budget.queries_used += 1;
  result.improved = result.objective_after > result.objective_before + budget.epsilon;
  return result;
}

// (1+λ) evolution strategy with Gaussian mutations on the parameters. The
// mutation scale halves after es_stall_limit generations without
// improvement. Black-box: only objective values are used.
inline OracleResult evolutionary_oracle(const Agent& start, const MixtureObjective& objective,
                                        OracleBudget& budget) {
  OracleResult result;
  result.agent = start;
  result.objective_before = objective.evaluate(start);
  budget.queries_used += 1;

  const GameDefinition& game = *objective.game;
  Rng rng(Rng::mix(budget.seed, 0xe5eedULL));
  double best = result.objective_before;
  double sigma = budget.es_sigma;
  int stall = 0;
  for (int generation = 0; generation < budget.step_count; ++generation) {
    bool generation_improved = false;
    for (int child = 0; child < budget.es_lambda; ++child) {
      Agent candidate = result.agent;
      for (double& p : candidate.params) p += rng.normal(0.0, sigma);
      if (game.project) game.project(candidate);
      const double value = objective.evaluate(candidate);
      budget.queries_used += 1;
      if (value > best) {
        best = value;
        result.agent = std::move(candidate);
        generation_improved = true;
      }
    }
    if (generation_improved) {
      stall = 0;
    } else if (++stall >= budget.es_stall_limit) {
      sigma /= 2.0;
      stall = 0;
    }
  }

  result.objective_after = best;
  result.improved = result.objective_after > result.objective_before + budget.epsilon;
  return result;
}

// Oracle calls are interchangeable; trainers take whichever fits the game.
using OracleFn = OracleResult (*)(const Agent&, const MixtureObjective&, OracleBudget&);

}  // namespace gamescape

#endif  // GAMESCAPE_ORACLES_HPP_
