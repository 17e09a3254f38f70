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

#ifndef GAMESCAPE_EVAL_HPP_
#define GAMESCAPE_EVAL_HPP_

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

#include "gamescape/matrix.hpp"
#include "gamescape/rng.hpp"
#include "gamescape/types.hpp"

namespace gamescape {

// Match settings for evaluating one pair of agents. `samples` payoff draws
// are averaged; deterministic games ignore the seed, so the default of one
// sample is exact for them.
struct EvalConfig {
  int samples = 1;
  std::uint64_t seed = 0;
};

// Antisymmetric matrix of pairwise payoffs. Antisymmetry is a class
// invariant, checked against `tol` on construction; matrices built by this
// library are antisymmetric exactly (tol 0) because only the upper triangle
// is ever evaluated and the lower is its reflected negation.
class EvalMatrix {
 public:
  EvalMatrix() = default;
  EvalMatrix(Matrix entries, double tol) : entries_(std::move(entries)), tol_(tol) {
    detail::require(entries_.square(), "evaluation matrix must be square");
    detail::require(tol_ >= 0.0, "antisymmetry tolerance must be nonnegative");
    detail::require(entries_.all_finite(), "evaluation matrix has non-finite entries");
    for (std::size_t i = 0; i < entries_.rows(); ++i)
      for (std::size_t j = i; j < entries_.cols(); ++j)
        detail::require(std::fabs(entries_(i, j) + entries_(j, i)) <= tol_,
                        "matrix is not antisymmetric within tolerance");
  }

  std::size_t size() const { return entries_.rows(); }
  double tol() const { return tol_; }
  const Matrix& entries() const { return entries_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }

 private:
  Matrix entries_;
  double tol_ = 0.0;
};

// (M − Mᵀ)/2. Idempotent on antisymmetric input, zero on symmetric input.
// The result is exactly antisymmetric: x−y and y−x negate exactly in IEEE
// arithmetic.
inline EvalMatrix antisymmetrize(const Matrix& m) {
  detail::require(m.square(), "antisymmetrize: matrix must be square");
  detail::require(m.all_finite(), "antisymmetrize: matrix has non-finite entries");
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = (m(i, j) - m(j, i)) / 2.0;
  return EvalMatrix(std::move(out), 0.0);
}

namespace detail {

// Mean payoff over `samples` draws with per-(pair, sample) derived seeds.
inline double sampled_payoff(const GameDefinition& game, const Agent& v, const Agent& w,
                             std::size_t i, std::size_t j, const EvalConfig& cfg) {
  require(cfg.samples >= 1, "eval config needs at least one sample");
  double acc = 0.0;
  for (int s = 0; s < cfg.samples; ++s) {
    const std::uint64_t pair_seed =
        Rng::mix(cfg.seed, Rng::mix(static_cast<std::uint64_t>(i) * 0x100000001ULL +
                                        static_cast<std::uint64_t>(j),
                                    static_cast<std::uint64_t>(s)));
    const double p = game.phi(v, w, pair_seed);
    require(std::isfinite(p), "game '" + game.game_id + "' returned a non-finite payoff");
    acc += p;
  }
  return acc / static_cast<double>(cfg.samples);
}

}  // namespace detail

// Pairwise evaluation of a population. Entries above the diagonal are
// evaluated; the rest are filled by reflection with a sign flip, so the
// matrix is exactly antisymmetric and the diagonal exactly zero regardless
// of sampling noise.
inline EvalMatrix build_eval_matrix(const GameDefinition& game, const Population& pop,
                                    const EvalConfig& cfg = {}) {
  validate_population(game, pop);
  detail::require(cfg.samples >= 1, "eval config needs at least one sample");
  const std::size_t n = pop.size();
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double p = detail::sampled_payoff(game, pop.agents[i], pop.agents[j], i, j, cfg);
      a(i, j) = p;
      a(j, i) = -p;
    }
  }
  return EvalMatrix(std::move(a), 0.0);
}

// Grows an existing evaluation matrix by the agents of `pop` beyond
// `previous.size()`. Seeds are derived from final indices, so the result is
// identical to rebuilding from scratch.
inline EvalMatrix extend_eval_matrix(const GameDefinition& game, const Population& pop,
                                     const EvalMatrix& previous, const EvalConfig& cfg = {}) {
  validate_population(game, pop);
  const std::size_t old_n = previous.size();
  const std::size_t n = pop.size();
  detail::require(old_n <= n, "extend_eval_matrix: population shrank");
  Matrix a(n, n);
  for (std::size_t i = 0; i < old_n; ++i)
    for (std::size_t j = 0; j < old_n; ++j) a(i, j) = previous(i, j);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = std::max(i + 1, old_n); j < n; ++j) {
      const double p = detail::sampled_payoff(game, pop.agents[i], pop.agents[j], i, j, cfg);
      a(i, j) = p;
      a(j, i) = -p;
    }
  }
  return EvalMatrix(std::move(a), previous.tol());
}

// Rectangular payoff matrix phi(v, w) for v in P (rows) and w in Q (cols).
inline Matrix cross_eval_matrix(const GameDefinition& game, const Population& p,
                                const Population& q, const EvalConfig& cfg = {}) {
  validate_population(game, p);
  validate_population(game, q);
  Matrix a(p.size(), q.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j)
      a(i, j) = detail::sampled_payoff(game, p.agents[i], q.agents[j], i, j + 0x8000000000ULL, cfg);
  return a;
}

}  // namespace gamescape

#endif  // GAMESCAPE_EVAL_HPP_
