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
#include <sstream>

#include "gamescape/eval.hpp"
#include "gamescape/games.hpp"
#include "oracle_helpers.hpp"

namespace gamescape {
namespace {

TEST_CASE("disc eval matrix of two unit agents") {
  const GameDefinition disc = make_disc_game();
  const Population pop = make_population(
      "disc", {Agent{"disc", {1.0, 0.0}, "a"}, Agent{"disc", {0.0, 1.0}, "b"}});
  const EvalMatrix a = build_eval_matrix(disc, pop);
  CHECK(a(0, 0) == 0.0);
  CHECK(a(0, 1) == 1.0);
  CHECK(a(1, 0) == -1.0);
  CHECK(a(1, 1) == 0.0);
}

TEST_CASE("singleton population gives the 1x1 zero matrix") {
  const GameDefinition disc = make_disc_game();
  const Population pop = make_population("disc", {Agent{"disc", {0.3, -0.2}, ""}});
  const EvalMatrix a = build_eval_matrix(disc, pop);
  REQUIRE(a.size() == 1);
  CHECK(a(0, 0) == 0.0);
}

TEST_CASE("rps embedding at eps=1 evaluates to the unit RPS matrix") {
  const GameDefinition disc = make_disc_game();
  const EvalMatrix a = build_eval_matrix(disc, rps_embedding(1.0));
  const Matrix expected = testing::unit_rps();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      CHECK(a(i, j) == Catch::Approx(expected(i, j)).margin(1e-12));
}

TEST_CASE("antisymmetrize examples") {
  Matrix m(2, 2);
  m(0, 0) = 1;
  m(0, 1) = 2;
  m(1, 0) = 0;
  m(1, 1) = 1;
  const EvalMatrix a = antisymmetrize(m);
  CHECK(a(0, 0) == 0.0);
  CHECK(a(0, 1) == 1.0);
  CHECK(a(1, 0) == -1.0);
  CHECK(a(1, 1) == 0.0);
  CHECK(a.tol() == 0.0);

  // Idempotent on antisymmetric input.
  const EvalMatrix again = antisymmetrize(a.entries());
  CHECK(again.entries() == a.entries());

  // Symmetric part cancels.
  Matrix sym(2, 2);
  sym(0, 0) = 3;
  sym(0, 1) = 5;
  sym(1, 0) = 5;
  sym(1, 1) = -1;
  const EvalMatrix zero = antisymmetrize(sym);
  CHECK(zero.entries().max_abs() == 0.0);

  Matrix rect(2, 3);
  CHECK_THROWS_AS(antisymmetrize(rect), std::invalid_argument);
}

TEST_CASE("evaluation matrices are exactly antisymmetric", "[property]") {
  const GameDefinition disc = make_disc_game();
  Rng rng(7);
  std::vector<Agent> agents;
  for (int i = 0; i < 12; ++i) agents.push_back(disc.random_agent(rng));
  const EvalMatrix a = build_eval_matrix(disc, make_population("disc", agents));
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a(i, i) == 0.0);
    for (std::size_t j = 0; j < a.size(); ++j) CHECK(a(i, j) + a(j, i) == 0.0);
  }
}

TEST_CASE("build_eval_matrix is deterministic given the seed") {
  const GameDefinition disc = make_disc_game();
  Rng rng(11);
  std::vector<Agent> agents;
  for (int i = 0; i < 6; ++i) agents.push_back(disc.random_agent(rng));
  const Population pop = make_population("disc", agents);
  EvalConfig cfg;
  cfg.samples = 3;
  cfg.seed = 99;
  const EvalMatrix a = build_eval_matrix(disc, pop, cfg);
  const EvalMatrix b = build_eval_matrix(disc, pop, cfg);
  CHECK(a.entries() == b.entries());
}

TEST_CASE("appending a duplicate agent duplicates its row on old columns") {
  const GameDefinition disc = make_disc_game();
  Rng rng(3);
  std::vector<Agent> agents;
  for (int i = 0; i < 5; ++i) agents.push_back(disc.random_agent(rng));
  const Population pop = make_population("disc", agents);
  const EvalMatrix small = build_eval_matrix(disc, pop);

  std::vector<Agent> extended = agents;
  extended.push_back(agents[2]);  // exact copy
  const EvalMatrix big = build_eval_matrix(disc, make_population("disc", extended));
  for (std::size_t k = 0; k < 5; ++k) CHECK(big(5, k) == small(2, k));
}

TEST_CASE("extend_eval_matrix matches a full rebuild") {
  const GameDefinition disc = make_disc_game();
  Rng rng(5);
  std::vector<Agent> agents;
  for (int i = 0; i < 4; ++i) agents.push_back(disc.random_agent(rng));
  const Population small_pop = make_population("disc", agents);
  const EvalMatrix small = build_eval_matrix(disc, small_pop);

  agents.push_back(disc.random_agent(rng));
  agents.push_back(disc.random_agent(rng));
  const Population big_pop = make_population("disc", agents);
  const EvalMatrix incremental = extend_eval_matrix(disc, big_pop, small);
  const EvalMatrix rebuilt = build_eval_matrix(disc, big_pop);
  CHECK(incremental.entries() == rebuilt.entries());
}

TEST_CASE("dimension and finiteness errors") {
  const GameDefinition disc = make_disc_game();
  CHECK_THROWS_AS(validate_agent(disc, Agent{"disc", {1.0}, ""}), std::invalid_argument);
  CHECK_THROWS_AS(validate_agent(disc, Agent{"disc", {1.0, std::nan("")}, ""}),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_agent(disc, Agent{"blotto:3:10", {1.0, 2.0}, ""}),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_population("disc", {}), std::invalid_argument);
}

TEST_CASE("eval matrix constructor rejects asymmetric input") {
  Matrix bad(2, 2);
  bad(0, 1) = 1.0;
  bad(1, 0) = -0.5;
  CHECK_THROWS_AS(EvalMatrix(bad, 1e-12), std::invalid_argument);
  CHECK_NOTHROW(EvalMatrix(bad, 0.6));
}

TEST_CASE("matrix CSV round trip is exact") {
  Rng rng(17);
  const Matrix a = testing::random_antisymmetric(7, rng);
  std::stringstream ss;
  write_matrix_csv(ss, a);
  const Matrix back = read_matrix_csv(ss);
  REQUIRE(back.rows() == a.rows());
  CHECK(back == a);  // %.17g round-trips doubles exactly
}

}  // namespace
}  // namespace gamescape
