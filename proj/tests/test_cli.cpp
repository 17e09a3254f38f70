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
// End-to-end checks of the command-line binary.

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gamescape/io.hpp"
#include "oracle_helpers.hpp"

namespace gamescape {
namespace {

namespace fs = std::filesystem;

int run_cli(const std::string& args) {
  const std::string cmd = std::string(GAMESCAPE_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  return std::system(cmd.c_str());
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path temp_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST_CASE("cli synth writes a deterministic antisymmetric matrix") {
  const fs::path dir = temp_dir("gs_cli_synth");
  const std::string out1 = (dir / "a.csv").string();
  const std::string out2 = (dir / "b.csv").string();
  REQUIRE(run_cli("synth --kind mixed --n 12 --sigma 0.02 --seed 5 --out " + out1) == 0);
  REQUIRE(run_cli("synth --kind mixed --n 12 --sigma 0.02 --seed 5 --out " + out2) == 0);
  CHECK(slurp(out1) == slurp(out2));
  CHECK_NOTHROW(EvalMatrix(read_matrix_csv_file(out1), 1e-12));
  fs::remove_all(dir);
}

TEST_CASE("cli analyze on the unit RPS matrix") {
  const fs::path dir = temp_dir("gs_cli_analyze");
  const std::string matrix_path = (dir / "rps.csv").string();
  write_matrix_csv(matrix_path, testing::unit_rps());
  const std::string out = (dir / "bundle").string();
  REQUIRE(run_cli("analyze " + matrix_path + " --embedding schur --out " + out) == 0);

  nlohmann::json report;
  std::ifstream is(fs::path(out) / "analysis.json");
  REQUIRE(is.good());
  is >> report;
  CHECK(report["rank"] == 2);
  CHECK(report["diversity"].get<double>() == Catch::Approx(1.0 / 3.0).margin(1e-9));
  for (const auto& p : report["nash"]["probs"])
    CHECK(p.get<double>() == Catch::Approx(1.0 / 3.0).margin(1e-6));
  CHECK(fs::exists(fs::path(out) / "embedding.csv"));
  CHECK(fs::exists(fs::path(out) / "hodge_ratings.csv"));
  fs::remove_all(dir);
}

TEST_CASE("cli run produces artifacts and is byte-deterministic") {
  const fs::path dir = temp_dir("gs_cli_run");
  const std::string config_path = (dir / "config.json").string();
  {
    std::ofstream os(config_path);
    os << R"({"game": "disc", "algorithm": "psro_rn", "iterations": 3, "seed": 21,
              "oracle": {"kind": "gradient", "step_count": 20}})";
  }
  const std::string out1 = (dir / "run1").string();
  const std::string out2 = (dir / "run2").string();
  REQUIRE(run_cli("run --config " + config_path + " --out " + out1) == 0);
  REQUIRE(run_cli("run --config " + config_path + " --out " + out2) == 0);
  CHECK(fs::exists(fs::path(out1) / "run_log.jsonl"));
  CHECK(slurp(fs::path(out1) / "metrics.csv") == slurp(fs::path(out2) / "metrics.csv"));
  CHECK(slurp(fs::path(out1) / "final_population.json") ==
        slurp(fs::path(out2) / "final_population.json"));

  SECTION("the emitted population feeds back into compare") {
    const std::string pop = (fs::path(out1) / "final_population.json").string();
    const std::string report_path = (dir / "cmp.json").string();
    REQUIRE(run_cli("compare " + pop + " " + pop + " --out " + report_path) == 0);
    nlohmann::json report;
    std::ifstream is(report_path);
    is >> report;
    CHECK(std::fabs(report["value"].get<double>()) <= 1e-9);  // perf(P, P) = 0
  }
  fs::remove_all(dir);
}

TEST_CASE("cli run from an explicit initial population grows the hull metric") {
  const fs::path dir = temp_dir("gs_cli_init");
  const std::string pop_path = (dir / "rps.json").string();
  write_population(pop_path, rps_embedding(1.0));
  const std::string config_path = (dir / "config.json").string();
  {
    std::ofstream os(config_path);
    os << R"({"game": "disc", "algorithm": "psro_rn", "iterations": 5, "seed": 3,
              "oracle": {"step_count": 15},
              "initial_population_file": ")" << pop_path << R"("})";
  }
  const std::string out = (dir / "run").string();
  REQUIRE(run_cli("run --config " + config_path + " --out " + out) == 0);

  std::ifstream ms(fs::path(out) / "metrics.csv");
  std::string line;
  std::getline(ms, line);  // header
  double prev = -1.0;
  int rows = 0;
  while (std::getline(ms, line)) {
    const std::size_t a = line.find(','), b = line.find(',', a + 1);
    const double hull = std::stod(line.substr(b + 1));
    CHECK(hull > prev);  // strictly increasing in the disc game
    prev = hull;
    ++rows;
  }
  CHECK(rows == 6);
  fs::remove_all(dir);
}

TEST_CASE("cli error paths exit nonzero") {
  const fs::path dir = temp_dir("gs_cli_err");
  CHECK(run_cli("run --config /nonexistent.json") != 0);

  const std::string bad_config = (dir / "bad.json").string();
  {
    std::ofstream os(bad_config);
    os << R"({"algorithm": "psro_n", "iterations": 1, "seed": 0})";  // game missing
  }
  CHECK(run_cli("run --config " + bad_config) != 0);

  // Mismatched game ids in compare.
  const GameDefinition disc = make_disc_game();
  Rng rng(1);
  const std::string pop_a = (dir / "a.json").string();
  const std::string pop_b = (dir / "b.json").string();
  write_population(pop_a, make_population("disc", {disc.random_agent(rng)}));
  write_population(pop_b, make_population("transitive", {Agent{"transitive", {0.1}, ""}}));
  CHECK(run_cli("compare " + pop_a + " " + pop_b) != 0);
  fs::remove_all(dir);
}

}  // namespace
}  // namespace gamescape
