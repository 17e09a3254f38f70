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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "gamescape/metrics.hpp"
#include "gamescape/psro.hpp"
#include "oracle_helpers.hpp"

namespace gamescape {
namespace {

constexpr auto kGradOracle = [](const Agent& a, const MixtureObjective& o, OracleBudget& b) {
  return gradient_ascent_oracle(a, o, b);
};

Population rating_population(const std::vector<double>& ratings) {
  std::vector<Agent> agents;
  for (double r : ratings) agents.push_back(Agent{"transitive", {r}, ""});
  return make_population("transitive", std::move(agents));
}

TEST_CASE("train_fixed") {
  const GameDefinition transitive = make_transitive_game();
  const Agent opponent{"transitive", {0.0}, ""};
  SECTION("ratings never fall on a transitive game") {
    const Agent init{"transitive", {0.5}, ""};
    const Agent final_agent = train_fixed(transitive, opponent, init, kGradOracle, 5);
    CHECK(final_agent.params[0] >= init.params[0]);
  }
  SECTION("zero iterations is the identity") {
    const Agent init{"transitive", {0.5}, ""};
    const Agent out = train_fixed(transitive, opponent, init, kGradOracle, 0);
    CHECK(out.params == init.params);
  }
  SECTION("disc game against (0,1) climbs in x") {
    const GameDefinition disc = make_disc_game();
    const Agent init{"disc", {0.2, 0.1}, ""};
    const Agent out =
        train_fixed(disc, Agent{"disc", {0.0, 1.0}, ""}, init, kGradOracle, 3);
    CHECK(out.params[0] > init.params[0]);
  }
}

TEST_CASE("self_play") {
  SECTION("transitive ratings are nondecreasing along the iterates") {
    const GameDefinition transitive = make_transitive_game();
    const Population pop =
        self_play(transitive, Agent{"transitive", {0.0}, ""}, kGradOracle, 6);
    REQUIRE(pop.size() == 7);
    for (std::size_t i = 0; i + 1 < pop.size(); ++i)
      CHECK(pop.agents[i + 1].params[0] >= pop.agents[i].params[0]);
  }
  SECTION("zero iterations returns only the initial agent") {
    const GameDefinition transitive = make_transitive_game();
    const Population pop =
        self_play(transitive, Agent{"transitive", {0.3}, ""}, kGradOracle, 0);
    CHECK(pop.size() == 1);
  }
  SECTION("disc-game self-play cycles instead of improving globally") {
    const GameDefinition disc = make_disc_game();
    OracleBudget budget;
    budget.step_count = 30;
    const Population pop =
        self_play(disc, Agent{"disc", {1.0, 0.0}, ""}, kGradOracle, 12, budget);
    // Performance against the first iterate is not monotone: some later
    // iterate loses to an earlier one.
    bool nonmonotone = false;
    double prev = disc.phi(pop.agents[1], pop.agents[0], 0);
    for (std::size_t t = 2; t < pop.size(); ++t) {
      const double cur = disc.phi(pop.agents[t], pop.agents[0], 0);
      if (cur < prev - 1e-12) nonmonotone = true;
      prev = cur;
    }
    CHECK(nonmonotone);
  }
}

TEST_CASE("nash response degenerates to self-play on transitive games") {
  // With the best agent last, the Nash is a point mass on it, so one
  // nash-response step and one self-play step see bitwise-identical
  // objectives and must produce bitwise-identical agents.
  const GameDefinition transitive = make_transitive_game();
  const Population pop = rating_population({0.25, 0.5, 1.0});

  PsroState nash_state = make_psro_state(transitive, pop);
  REQUIRE(nash_state.nash.probs == std::vector<double>{0.0, 0.0, 1.0});
  psro_step_nash(nash_state, transitive, kGradOracle);

  PsroState sp_state = make_psro_state(transitive, pop);
  self_play_step(sp_state, transitive, kGradOracle);

  CHECK(nash_state.population.agents.back().params ==
        sp_state.population.agents.back().params);
}

TEST_CASE("nash response stalls when the gamescape contains the game's Nash") {
  // The mixture hull of the full-strength RPS population contains the disc
  // game's global Nash (the origin), so the Nash-mixture objective is
  // identically zero and no epsilon-better response exists.
  const GameDefinition disc = make_disc_game();
  PsroState state = make_psro_state(disc, rps_embedding(1.0));
  const StepOutcome outcome = psro_step_nash(state, disc, kGradOracle);
  CHECK_FALSE(outcome.any_improved);
}

TEST_CASE("improving nash-response agents strictly enlarge the gamescape") {
  // Prop: if the new agent beats the Nash mixture by more than epsilon, its
  // row cannot be a convex combination of existing rows.
  const GameDefinition disc = make_disc_game();
  Rng rng(5);
  int improving_steps = 0;
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Agent> agents;
    for (int i = 0; i < 3; ++i) agents.push_back(disc.random_agent(rng));
    PsroState state = make_psro_state(disc, make_population("disc", agents));
    TrainerConfig cfg;
    cfg.budget.step_count = 20;
    psro_step_nash(state, disc, kGradOracle, cfg);
    // Re-evaluate the realized objective of the new agent against the old Nash.
    PsroState before = make_psro_state(disc, make_population("disc", agents));
    const double gain =
        mixture_objective(before.population, before.nash.probs, false, disc)
            .evaluate(state.population.agents.back());
    if (gain > 1e-6) {
      ++improving_steps;
      CHECK_FALSE(is_redundant(state.eval, state.population.size() - 1, 1e-9));
    }
  }
  CHECK(improving_steps > 10);  // the property must actually have been exercised
}

TEST_CASE("uniform response") {
  const GameDefinition disc = make_disc_game();
  SECTION("with one agent it matches a self-play step bitwise") {
    const Population single = make_population("disc", {Agent{"disc", {0.4, 0.1}, ""}});
    PsroState u_state = make_psro_state(disc, single);
    psro_step_uniform(u_state, disc, kGradOracle);
    PsroState sp_state = make_psro_state(disc, single);
    self_play_step(sp_state, disc, kGradOracle);
    CHECK(u_state.population.agents.back().params ==
          sp_state.population.agents.back().params);
  }
  SECTION("rock's uniform objective over RPS is zero") {
    const Population rps = rps_embedding(1.0);
    const MixtureObjective obj =
        mixture_objective(rps, {1.0 / 3, 1.0 / 3, 1.0 / 3}, false, disc);
    CHECK(std::fabs(obj.evaluate(rps.agents[0])) <= 1e-12);
  }
}

TEST_CASE("rectified nash response") {
  const GameDefinition disc = make_disc_game();
  SECTION("dominant agent: exactly one oracle call, the self-play degeneration") {
    const GameDefinition transitive = make_transitive_game();
    PsroState state = make_psro_state(transitive, rating_population({0.1, 0.6, 2.0}));
    const StepOutcome outcome = psro_step_rectified(state, transitive, kGradOracle);
    CHECK(outcome.trained == std::vector<std::size_t>{2});
    CHECK(state.population.size() == 4);
  }
  SECTION("all three RPS agents update and the hull grows") {
    PsroState state = make_psro_state(disc, rps_embedding(0.5));
    const double area_before = schur_hull_area(state.eval);
    const StepOutcome outcome = psro_step_rectified(state, disc, kGradOracle);
    CHECK(outcome.trained.size() == 3);
    CHECK(state.population.size() == 6);
    CHECK(schur_hull_area(state.eval) > area_before);
  }
  SECTION("the rectified objectives Nash-average to the effective diversity") {
    Rng rng(11);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Agent> agents;
      for (int i = 0; i < 5; ++i) agents.push_back(disc.random_agent(rng));
      const Population pop = make_population("disc", agents);
      const EvalMatrix eval = build_eval_matrix(disc, pop);
      const NashMixture nash = max_entropy_nash(eval);
      const MixtureObjective obj = mixture_objective(pop, nash.probs, true, disc);
      double nash_averaged = 0.0;
      for (std::size_t j = 0; j < pop.size(); ++j)
        nash_averaged += nash.probs[j] * obj.evaluate(pop.agents[j]);
      CHECK(nash_averaged ==
            Catch::Approx(effective_diversity(eval, nash)).margin(1e-10));
    }
  }
  SECTION("lowering the support threshold only adds training targets") {
    const EvalMatrix uneven = build_eval_matrix(disc, rps_embedding(1.0));
    PsroState state = make_psro_state(disc, rps_embedding(1.0));
    TrainerConfig strict;
    strict.support_threshold = 0.4;  // above 1/3: nobody qualifies... use 0.2 instead
    strict.support_threshold = 0.2;
    PsroState copy = state;
    const StepOutcome coarse = psro_step_rectified(copy, disc, kGradOracle, strict);
    TrainerConfig loose;
    loose.support_threshold = 1e-6;
    const StepOutcome fine = psro_step_rectified(state, disc, kGradOracle, loose);
    for (std::size_t idx : coarse.trained)
      CHECK(std::find(fine.trained.begin(), fine.trained.end(), idx) != fine.trained.end());
  }
}

TEST_CASE("trainers never mutate existing agents", "[property]") {
  const GameDefinition disc = make_disc_game();
  Rng rng(13);
  std::vector<Agent> agents;
  for (int i = 0; i < 4; ++i) agents.push_back(disc.random_agent(rng));
  PsroState state = make_psro_state(disc, make_population("disc", agents));
  psro_step_nash(state, disc, kGradOracle);
  psro_step_uniform(state, disc, kGradOracle);
  psro_step_rectified(state, disc, kGradOracle);
  for (std::size_t i = 0; i < agents.size(); ++i)
    CHECK(state.population.agents[i].params == agents[i].params);
}

TEST_CASE("run_psro") {
  SECTION("zero iterations logs only the initial snapshot") {
    RunConfig config;
    config.game = "disc";
    config.algorithm = "psro_n";
    config.iterations = 0;
    config.seed = 1;
    const PsroRunLog log = run_psro(config);
    CHECK(log.records.size() == 1);
    CHECK(log.final_population.size() == 1);
  }
  SECTION("identical configs give identical logs") {
    RunConfig config;
    config.game = "disc";
    config.algorithm = "psro_rn";
    config.iterations = 4;
    config.seed = 7;
    const PsroRunLog a = run_psro(config);
    const PsroRunLog b = run_psro(config);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
      CHECK(a.records[i].nash == b.records[i].nash);
      CHECK(a.records[i].hull_area == b.records[i].hull_area);
      CHECK(a.records[i].diversity == b.records[i].diversity);
      CHECK(a.records[i].queries == b.records[i].queries);
      CHECK(a.records[i].eval == b.records[i].eval);
    }
    for (std::size_t i = 0; i < a.final_population.size(); ++i)
      CHECK(a.final_population.agents[i].params == b.final_population.agents[i].params);
  }
  SECTION("iterations are strictly increasing in the log") {
    RunConfig config;
    config.game = "disc";
    config.algorithm = "psro_u";
    config.iterations = 5;
    config.seed = 3;
    const PsroRunLog log = run_psro(config);
    for (std::size_t i = 1; i < log.records.size(); ++i)
      CHECK(log.records[i].iteration == log.records[i - 1].iteration + 1);
  }
  SECTION("query budgets stop new steps once exhausted") {
    RunConfig config;
    config.game = "disc";
    config.algorithm = "self_play";
    config.iterations = 100;
    config.seed = 2;
    config.oracle.step_count = 10;  // 12 queries per call
    config.query_budget = 5 * 12;
    const PsroRunLog log = run_psro(config);
    CHECK(log.final_population.size() == 6);  // exactly 5 calls before the cap
  }
  SECTION("unknown algorithm is rejected") {
    RunConfig config;
    config.game = "disc";
    config.algorithm = "alphazero";
    CHECK_THROWS_AS(run_psro(config), std::invalid_argument);
  }
  SECTION("rectified disc run from the RPS population grows the hull every iteration") {
    RunConfig config;
    config.game = "disc";
    config.algorithm = "psro_rn";
    config.iterations = 5;
    config.seed = 4;
    config.oracle.step_count = 15;
    const GameDefinition disc = make_disc_game();
    const Population start = rps_embedding(1.0);
    const PsroRunLog log = run_psro(config, disc, &start);
    REQUIRE(log.records.size() == 6);
    for (std::size_t r = 1; r < log.records.size(); ++r)
      CHECK(log.records[r].hull_area > log.records[r - 1].hull_area);
  }
  SECTION("hull areas in the run log never decrease") {
    RunConfig config;
    config.game = "disc";
    config.algorithm = "psro_u";
    config.iterations = 6;
    config.seed = 9;
    config.initial_population = 3;
    const PsroRunLog log = run_psro(config);
    for (std::size_t r = 1; r < log.records.size(); ++r)
      CHECK(log.records[r].hull_area >= log.records[r - 1].hull_area);
  }
}

TEST_CASE("rectified nash runs grow the hull monotonically in the disc game") {
  // Starting from the full-strength RPS population, rectified responses
  // push every supported agent outward, so the gamescape area rises at
  // every accepted iteration.
  const GameDefinition disc = make_disc_game();
  PsroState state = make_psro_state(disc, rps_embedding(1.0));
  TrainerConfig cfg;
  cfg.budget.step_count = 15;
  double area = schur_hull_area(state.eval);
  for (int t = 0; t < 5; ++t) {
    psro_step_rectified(state, disc, kGradOracle, cfg);
    const double next = schur_hull_area(state.eval);
    CHECK(next > area);
    area = next;
  }
}

}  // namespace
}  // namespace gamescape
