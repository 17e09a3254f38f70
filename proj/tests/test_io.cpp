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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gamescape/io.hpp"
#include "oracle_helpers.hpp"

namespace gamescape {
namespace {

namespace fs = std::filesystem;

fs::path temp_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST_CASE("population files round trip losslessly") {
  const GameDefinition disc = make_disc_game();
  Rng rng(3);
  std::vector<Agent> agents;
  for (int i = 0; i < 5; ++i) {
    Agent a = disc.random_agent(rng);
    a.tag = "agent-" + std::to_string(i);
    agents.push_back(a);
  }
  const Population pop =
      make_population("disc", agents, {{"seed", "3"}, {"algorithm", "none"}});

  const fs::path dir = temp_dir("gs_io_pop");
  const std::string path = (dir / "pop.json").string();
  write_population(path, pop);
  const Population back = read_population(path);

  CHECK(back.game_id == pop.game_id);
  CHECK(back.meta == pop.meta);
  REQUIRE(back.size() == pop.size());
  for (std::size_t i = 0; i < pop.size(); ++i) {
    CHECK(back.agents[i].params == pop.agents[i].params);  // bit-exact doubles
    CHECK(back.agents[i].tag == pop.agents[i].tag);
  }
  fs::remove_all(dir);
}

TEST_CASE("unsupported population version is rejected") {
  nlohmann::json doc = {{"format_version", 99}, {"game_id", "disc"},
                        {"agents", nlohmann::json::array()}};
  CHECK_THROWS_AS(population_from_json(doc), std::invalid_argument);
}

TEST_CASE("run artifacts land on disk and reparse cleanly") {
  RunConfig config;
  config.game = "disc";
  config.algorithm = "psro_rn";
  config.iterations = 3;
  config.seed = 11;
  const PsroRunLog log = run_psro(config);

  const fs::path dir = temp_dir("gs_io_run");
  write_run_artifacts(dir.string(), log);

  CHECK(fs::exists(dir / "run_log.jsonl"));
  CHECK(fs::exists(dir / "metrics.csv"));
  CHECK(fs::exists(dir / "final_population.json"));
  CHECK(fs::exists(dir / "eval_0000.csv"));
  CHECK(fs::exists(dir / "eval_0003.csv"));

  // Every emitted evaluation matrix satisfies the antisymmetry invariant.
  for (const IterationRecord& rec : log.records) {
    char name[32];
    std::snprintf(name, sizeof(name), "eval_%04d.csv", rec.iteration);
    const Matrix m = read_matrix_csv_file((dir / name).string());
    CHECK_NOTHROW(EvalMatrix(m, 1e-12));
    CHECK(m == rec.eval);
  }

  // The JSONL log has one line per record.
  std::ifstream is(dir / "run_log.jsonl");
  std::string line;
  std::size_t lines = 0;
  while (std::getline(is, line))
    if (!line.empty()) ++lines;
  CHECK(lines == log.records.size());

  // Metrics CSV has the documented header and one row per record.
  std::ifstream ms(dir / "metrics.csv");
  std::string header;
  std::getline(ms, header);
  CHECK(header == "iteration,diversity,hull_area,queries");

  const Population back = read_population((dir / "final_population.json").string());
  CHECK(back.size() == log.final_population.size());
  fs::remove_all(dir);
}

TEST_CASE("report serializers") {
  const NashReport nash{-0.5, 0.0, 0.1, false};
  const nlohmann::json j = to_json(nash);
  CHECK(j["min_payoff"] == -0.5);
  CHECK(j["pass"] == false);

  const PerfReport perf{1.25, {1.0}, {0.0, 1.0}};
  CHECK(to_json(perf)["value"] == 1.25);

  const EvalMatrix rps(testing::unit_rps(), 0.0);
  const RpsReduction red = rps_reduce(rps, max_entropy_nash(rps), 0);
  const nlohmann::json rj = to_json(red);
  CHECK(rj["alpha"].get<double>() == Catch::Approx(1.0 / 9.0));
  CHECK(rj["meta_matrix"].size() == 3);
}

TEST_CASE("embedding artifacts") {
  const EvalMatrix rps(testing::unit_rps(), 0.0);
  const Embedding e = schur_embedding(rps, 2);
  const fs::path dir = temp_dir("gs_io_embed");
  write_embedding((dir / "embed.csv").string(), (dir / "embed.json").string(), e);
  const Matrix coords = read_matrix_csv_file((dir / "embed.csv").string());
  CHECK(coords == e.coords);
  std::ifstream is(dir / "embed.json");
  nlohmann::json sidecar;
  is >> sidecar;
  CHECK(sidecar["method"] == "schur");
  fs::remove_all(dir);
}

}  // namespace
}  // namespace gamescape
