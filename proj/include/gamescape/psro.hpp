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
// Training loops over populations: optimization against a fixed opponent,
// self-play, and the response family — best response to the Nash mixture,
// to the uniform mixture, and to the rectified Nash mixture (every
// Nash-supported agent trains against the opponents it beats or ties).
// Populations are append-only; existing members are never modified.

#ifndef GAMESCAPE_PSRO_HPP_
#define GAMESCAPE_PSRO_HPP_

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gamescape/analytics.hpp"
#include "gamescape/eval.hpp"
#include "gamescape/games.hpp"
#include "gamescape/metrics.hpp"
#include "gamescape/nash.hpp"
#include "gamescape/oracles.hpp"
#include "gamescape/types.hpp"

namespace gamescape {

struct PsroState {
  Population population;
  EvalMatrix eval;
  NashMixture nash;  // maximum-entropy Nash of eval
  int iteration = 0;
  long long queries = 0;
};

inline PsroState make_psro_state(const GameDefinition& game, Population pop,
                                 const EvalConfig& cfg = {}) {
  PsroState state;
  state.population = std::move(pop);
  state.eval = build_eval_matrix(game, state.population, cfg);
  state.nash = max_entropy_nash(state.eval);
  return state;
}

// What one training step did: which agents were used as oracle starting
// points, the agents produced, and per-agent improvement and duplicate
// flags. A step where no oracle call improved marks the run converged.
struct StepOutcome {
  std::vector<std::size_t> trained;
  std::vector<Agent> new_agents;
  std::vector<bool> improved;
  std::vector<bool> redundant;
  bool any_improved = false;
};

namespace detail {

struct OracleJob {
  std::size_t start_index;
  MixtureObjective objective;
};

// Runs the jobs against a frozen population, then appends all results at
// once and refreshes the evaluation matrix and Nash mixture.
template <typename Oracle>
StepOutcome run_oracle_round(PsroState& state, const GameDefinition& game,
                             const std::vector<OracleJob>& jobs, Oracle&& oracle,
                             const OracleBudget& budget_template, const EvalConfig& eval_cfg,
                             double redundancy_tol) {
  StepOutcome outcome;
  const std::size_t old_size = state.population.size();
  const int iteration = state.iteration + 1;
  for (const OracleJob& job : jobs) {
    OracleBudget budget = budget_template;
    budget.seed = Rng::mix(budget_template.seed,
                           Rng::mix(static_cast<std::uint64_t>(iteration), job.start_index));
    OracleResult result =
        oracle(state.population.agents[job.start_index], job.objective, budget);
    state.queries += budget.queries_used;
    result.agent.tag = "iter=" + std::to_string(iteration) +
                       " parent=" + std::to_string(job.start_index);
    outcome.trained.push_back(job.start_index);
    outcome.improved.push_back(result.improved);
    outcome.any_improved = outcome.any_improved || result.improved;
    outcome.new_agents.push_back(std::move(result.agent));
  }
  for (const Agent& agent : outcome.new_agents) state.population.agents.push_back(agent);
  state.eval = extend_eval_matrix(game, state.population, state.eval, eval_cfg);
  state.nash = max_entropy_nash(state.eval);
  state.iteration = iteration;

  // Duplicate guard: a new row within tolerance of any earlier row is kept
  // (query accounting stays faithful) but flagged.
  const std::size_t n = state.population.size();
  for (std::size_t i = old_size; i < n; ++i) {
    bool duplicate = false;
    for (std::size_t j = 0; j < i && !duplicate; ++j) {
      double dist = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        dist = std::max(dist, std::fabs(state.eval(i, k) - state.eval(j, k)));
      duplicate = dist <= redundancy_tol;
    }
    outcome.redundant.push_back(duplicate);
  }
  return outcome;
}

}  // namespace detail

// Algorithm settings shared by the step functions.
struct TrainerConfig {
  OracleBudget budget;
  EvalConfig eval;
  double support_threshold = 1e-6;  // Nash mass counted as "positive" in the rectified step
  double redundancy_tol = 1e-9;
};

// One step of response-to-Nash: train one new agent (starting from the most
// recent) against the Nash mixture of the current population. On transitive
// games the Nash is a point mass on the best agent and this reduces to
// self-play.
template <typename Oracle>
StepOutcome psro_step_nash(PsroState& state, const GameDefinition& game, Oracle&& oracle,
                           const TrainerConfig& cfg = {}) {
  std::vector<detail::OracleJob> jobs;
  jobs.push_back({state.population.size() - 1,
                  mixture_objective(state.population, state.nash.probs, false, game)});
  return detail::run_oracle_round(state, game, jobs, oracle, cfg.budget, cfg.eval,
                                  cfg.redundancy_tol);
}

// One step of response-to-uniform (fictitious play flavor).
template <typename Oracle>
StepOutcome psro_step_uniform(PsroState& state, const GameDefinition& game, Oracle&& oracle,
                              const TrainerConfig& cfg = {}) {
  const std::size_t n = state.population.size();
  std::vector<double> weights(n, 1.0 / static_cast<double>(n));
  std::vector<detail::OracleJob> jobs;
  jobs.push_back({n - 1, mixture_objective(state.population, std::move(weights), false, game)});
  return detail::run_oracle_round(state, game, jobs, oracle, cfg.budget, cfg.eval,
                                  cfg.redundancy_tol);
}

// One step of response to the rectified Nash: every agent with Nash mass
// above the support threshold trains a fresh copy of itself against the
// Nash-weighted mixture of opponents it beats or ties (the rectifier drops
// its losses). Parents stay in the population. With a dominant agent the
// Nash is a point mass and exactly one agent trains.
template <typename Oracle>
StepOutcome psro_step_rectified(PsroState& state, const GameDefinition& game, Oracle&& oracle,
                                const TrainerConfig& cfg = {}) {
  std::vector<detail::OracleJob> jobs;
  for (std::size_t i = 0; i < state.population.size(); ++i) {
    if (state.nash.probs[i] <= cfg.support_threshold) continue;
    jobs.push_back({i, mixture_objective(state.population, state.nash.probs, true, game)});
  }
  detail::require(!jobs.empty(), "rectified step: empty Nash support");
  return detail::run_oracle_round(state, game, jobs, oracle, cfg.budget, cfg.eval,
                                  cfg.redundancy_tol);
}

// One self-play step: the most recent agent trains against itself only.
template <typename Oracle>
StepOutcome self_play_step(PsroState& state, const GameDefinition& game, Oracle&& oracle,
                           const TrainerConfig& cfg = {}) {
  const std::size_t last = state.population.size() - 1;
  const Population opponent =
      make_population(state.population.game_id, {state.population.agents[last]});
  std::vector<detail::OracleJob> jobs;
  jobs.push_back({last, mixture_objective(opponent, {1.0}, false, game)});
  return detail::run_oracle_round(state, game, jobs, oracle, cfg.budget, cfg.eval,
                                  cfg.redundancy_tol);
}

// Optimization against a fixed opponent: T oracle iterations on the single
// objective φ(·, opponent).
template <typename Oracle>
Agent train_fixed(const GameDefinition& game, const Agent& opponent, const Agent& init,
                  Oracle&& oracle, int iterations, OracleBudget budget = {}) {
  validate_agent(game, opponent);
  validate_agent(game, init);
  const Population fixed = make_population(game.game_id, {opponent});
  const MixtureObjective objective = mixture_objective(fixed, {1.0}, false, game);
  Agent current = init;
  for (int t = 0; t < iterations; ++t) {
    OracleBudget call = budget;
    call.seed = Rng::mix(budget.seed, static_cast<std::uint64_t>(t));
    OracleResult result = oracle(current, objective, call);
    current = std::move(result.agent);
  }
  return current;
}

// Self-play as a population algorithm: returns all iterates v_1 .. v_{T+1}.
// The final agent alone is the classic single-agent view.
template <typename Oracle>
Population self_play(const GameDefinition& game, const Agent& init, Oracle&& oracle,
                     int iterations, OracleBudget budget = {}) {
  validate_agent(game, init);
  std::vector<Agent> iterates{init};
  for (int t = 0; t < iterations; ++t) {
    const Population opponent = make_population(game.game_id, {iterates.back()});
    const MixtureObjective objective = mixture_objective(opponent, {1.0}, false, game);
    OracleBudget call = budget;
    call.seed = Rng::mix(budget.seed, static_cast<std::uint64_t>(t));
    OracleResult result = oracle(iterates.back(), objective, call);
    result.agent.tag = "iter=" + std::to_string(t + 1) + " parent=" +
                       std::to_string(iterates.size() - 1);
    iterates.push_back(std::move(result.agent));
  }
  return make_population(game.game_id, std::move(iterates), {{"algorithm", "self_play"}});
}

// ---------------------------------------------------------------------------
// Full runs

struct OracleParams {
  std::string kind = "gradient";  // "gradient" | "evolutionary"
  int step_count = 50;
  double step_size = 0.1;
  double epsilon = 1e-6;
  double fd_step = 1e-5;
  int es_lambda = 8;
  double es_sigma = 0.5;
  int es_stall_limit = 10;
};

struct RunConfig {
  std::string game;        // registry id
  std::string algorithm;   // self_play | psro_n | psro_u | psro_rn
  OracleParams oracle;
  int iterations = 20;
  std::uint64_t seed = 0;
  EvalConfig eval;
  long long query_budget = 0;  // 0: no cap; otherwise steps that would exceed it don't start
  int initial_population = 1;  // seeded random agents before training starts
  double support_threshold = 1e-6;
  double redundancy_tol = 1e-9;
};

// Exact query cost of one oracle call under the given settings; used to
// enforce equal budgets across algorithms that make different numbers of
// calls per iteration.
inline long long oracle_call_cost(const OracleParams& oracle, const GameDefinition& game) {
  if (oracle.kind == "evolutionary")
    return 1 + static_cast<long long>(oracle.es_lambda) * oracle.step_count;
  if (game.grad) return static_cast<long long>(oracle.step_count) + 2;
  return 2 + static_cast<long long>(oracle.step_count) * 2 *
                 static_cast<long long>(game.param_dim);
}

struct IterationRecord {
  int iteration = 0;
  std::size_t pop_size = 0;  // the population snapshot is the first pop_size agents
  std::vector<double> nash;
  double diversity = 0.0;
  // Area of the convex hull this iteration's agents span in the final
  // population's 2-D Schur embedding. One fixed embedding makes areas
  // comparable across iterations (populations are append-only, so the point
  // sets are nested and the area never decreases).
  double hull_area = 0.0;
  long long queries = 0;
  std::vector<std::size_t> trained;
  std::vector<bool> improved;
  std::vector<bool> redundant;
  bool converged = false;
  Matrix eval;
};

struct PsroRunLog {
  std::vector<IterationRecord> records;
  Population final_population;
  bool converged = false;
};

namespace detail {

inline OracleBudget budget_from_params(const OracleParams& p, std::uint64_t seed) {
  OracleBudget b;
  b.step_count = p.step_count;
  b.step_size = p.step_size;
  b.epsilon = p.epsilon;
  b.fd_step = p.fd_step;
  b.seed = seed;
  b.es_lambda = p.es_lambda;
  b.es_sigma = p.es_sigma;
  b.es_stall_limit = p.es_stall_limit;
  return b;
}

inline IterationRecord snapshot(const PsroState& state, StepOutcome outcome, bool converged) {
  IterationRecord rec;
  rec.iteration = state.iteration;
  rec.pop_size = state.population.size();
  rec.nash = state.nash.probs;
  rec.diversity = effective_diversity(state.eval, state.nash);
  rec.queries = state.queries;
  rec.trained = std::move(outcome.trained);
  rec.improved = std::move(outcome.improved);
  rec.redundant = std::move(outcome.redundant);
  rec.converged = converged;
  rec.eval = state.eval.entries();
  return rec;
}

}  // namespace detail

// Runs one full experiment: a seeded random initial population (or the one
// supplied), then training steps until the iteration cap, the query budget,
// or convergence (a step in which no oracle call cleared the epsilon
// improvement bar). Deterministic given the config.
inline PsroRunLog run_psro(const RunConfig& config, const GameDefinition& game,
                           const Population* initial_population = nullptr) {
  detail::require(config.iterations >= 0, "run config: iterations must be nonnegative");
  const bool evolutionary = config.oracle.kind == "evolutionary";
  detail::require(evolutionary || config.oracle.kind == "gradient",
                  "run config: oracle kind must be 'gradient' or 'evolutionary'");

  detail::require(config.initial_population >= 1, "run config: empty initial population");
  std::vector<Agent> initial;
  if (initial_population != nullptr) {
    validate_population(game, *initial_population);
    initial = initial_population->agents;
  } else {
    Rng init_rng(Rng::mix(config.seed, 0x1217ULL));
    for (int i = 0; i < config.initial_population; ++i) {
      Agent agent = game.random_agent(init_rng);
      agent.tag = "iter=0 index=" + std::to_string(i);
      initial.push_back(std::move(agent));
    }
  }
  Population pop = make_population(
      game.game_id, std::move(initial),
      {{"algorithm", config.algorithm},
       {"seed", std::to_string(config.seed)},
       {"game", game.game_id}});

  PsroState state = make_psro_state(game, std::move(pop), config.eval);
  TrainerConfig trainer;
  trainer.budget = detail::budget_from_params(config.oracle, config.seed);
  trainer.eval = config.eval;
  trainer.support_threshold = config.support_threshold;
  trainer.redundancy_tol = config.redundancy_tol;

  auto oracle = [&](const Agent& a, const MixtureObjective& obj, OracleBudget& b) {
    return evolutionary ? evolutionary_oracle(a, obj, b) : gradient_ascent_oracle(a, obj, b);
  };

  const long long call_cost = oracle_call_cost(config.oracle, game);
  PsroRunLog log;
  log.records.push_back(detail::snapshot(state, StepOutcome{}, false));
  for (int t = 1; t <= config.iterations; ++t) {
    if (config.query_budget > 0) {
      long long next_calls = 1;
      if (config.algorithm == "psro_rn") {
        next_calls = 0;
        for (double p : state.nash.probs)
          if (p > config.support_threshold) ++next_calls;
      }
      if (state.queries + next_calls * call_cost > config.query_budget) break;
    }
    StepOutcome outcome;
    if (config.algorithm == "self_play") {
      outcome = self_play_step(state, game, oracle, trainer);
    } else if (config.algorithm == "psro_n") {
      outcome = psro_step_nash(state, game, oracle, trainer);
    } else if (config.algorithm == "psro_u") {
      outcome = psro_step_uniform(state, game, oracle, trainer);
    } else if (config.algorithm == "psro_rn") {
      outcome = psro_step_rectified(state, game, oracle, trainer);
    } else {
      throw std::invalid_argument("unknown algorithm: " + config.algorithm);
    }
    log.converged = !outcome.any_improved;
    log.records.push_back(detail::snapshot(state, std::move(outcome), log.converged));
    if (log.converged) break;
  }
  // Hull areas of every iteration, in the final population's embedding.
  const std::vector<Point2> points = schur_points_2d(state.eval);
  for (IterationRecord& rec : log.records) {
    const std::vector<Point2> prefix(points.begin(),
                                     points.begin() + static_cast<std::ptrdiff_t>(rec.pop_size));
    rec.hull_area = hull_area_2d(prefix);
  }

  state.population.meta["iterations"] = std::to_string(state.iteration);
  log.final_population = std::move(state.population);
  return log;
}

inline PsroRunLog run_psro(const RunConfig& config) {
  const GameDefinition game = game_from_id(config.game);
  return run_psro(config, game);
}

}  // namespace gamescape

#endif  // GAMESCAPE_PSRO_HPP_
