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
// Command-line interface. Four verbs:
//   run      execute a training experiment from a JSON config
//   compare  relative population performance of two population files
//   analyze  Nash / diversity / rank / Hodge / embedding report of a matrix
//            CSV or population file
//   synth    generate a synthetic payoff matrix

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "gamescape/gamescape.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

gamescape::RunConfig parse_run_config(const std::string& path) {
  std::ifstream is(path);
  if (!is.good()) throw std::invalid_argument("cannot open config: " + path);
  json doc;
  is >> doc;

  gamescape::RunConfig config;
  config.game = doc.at("game").get<std::string>();
  config.algorithm = doc.at("algorithm").get<std::string>();
  config.iterations = doc.at("iterations").get<int>();
  config.seed = doc.at("seed").get<std::uint64_t>();
  if (doc.contains("oracle")) {
    const json& o = doc["oracle"];
    config.oracle.kind = o.value("kind", config.oracle.kind);
    config.oracle.step_count = o.value("step_count", config.oracle.step_count);
    config.oracle.step_size = o.value("step_size", config.oracle.step_size);
    config.oracle.epsilon = o.value("epsilon", config.oracle.epsilon);
    config.oracle.fd_step = o.value("fd_step", config.oracle.fd_step);
    config.oracle.es_lambda = o.value("es_lambda", config.oracle.es_lambda);
    config.oracle.es_sigma = o.value("es_sigma", config.oracle.es_sigma);
    config.oracle.es_stall_limit = o.value("es_stall_limit", config.oracle.es_stall_limit);
  }
  if (doc.contains("eval")) {
    config.eval.samples = doc["eval"].value("samples", config.eval.samples);
    config.eval.seed = doc["eval"].value("seed", config.eval.seed);
  }
  config.query_budget = doc.value("query_budget", config.query_budget);
  config.initial_population = doc.value("initial_population", config.initial_population);
  config.support_threshold = doc.value("support_threshold", config.support_threshold);
  config.redundancy_tol = doc.value("redundancy_tol", config.redundancy_tol);
  return config;
}

json matrix_to_json(const gamescape::Matrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  return rows;
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            std::optional<std::uint64_t> seed_override) {
  gamescape::RunConfig config = parse_run_config(config_path);
  if (seed_override) config.seed = *seed_override;

  std::optional<gamescape::Population> initial;
  {
    std::ifstream is(config_path);
    json doc;
    is >> doc;
    if (doc.contains("initial_population_file"))
      initial = gamescape::read_population(doc["initial_population_file"].get<std::string>());
  }
  const gamescape::GameDefinition game = gamescape::game_from_id(config.game);
  const gamescape::PsroRunLog log =
      gamescape::run_psro(config, game, initial ? &*initial : nullptr);
  const std::string dir =
      out_dir.empty() ? "run_" + config.algorithm + "_" + std::to_string(config.seed) : out_dir;
  gamescape::write_run_artifacts(dir, log);
  std::cout << dir << '\n';
  return 0;
}

int cmd_compare(const std::string& path_p, const std::string& path_q,
                const std::string& out_path, double tol) {
  const gamescape::Population p = gamescape::read_population(path_p);
  const gamescape::Population q = gamescape::read_population(path_q);
  if (p.game_id != q.game_id)
    throw std::invalid_argument("populations play different games: " + p.game_id + " vs " +
                                q.game_id);
  const gamescape::GameDefinition game = gamescape::game_from_id(p.game_id);
  const gamescape::Matrix cross = gamescape::cross_eval_matrix(game, p, q);
  gamescape::PerfReport perf = gamescape::relative_performance(cross);
  (void)tol;

  json report = gamescape::to_json(perf);
  report["game_id"] = p.game_id;
  report["cross_matrix"] = matrix_to_json(cross);
  if (out_path.empty()) {
    std::cout << report.dump(2) << '\n';
  } else {
    std::ofstream os(out_path);
    if (!os.good()) throw std::invalid_argument("cannot write " + out_path);
    os << report.dump(2) << '\n';
    std::cout << out_path << '\n';
  }
  return 0;
}

int cmd_analyze(const std::string& input, const std::string& embedding_name,
                const std::string& out_dir, double tol) {
  gamescape::EvalMatrix eval;
  if (input.size() > 5 && input.substr(input.size() - 5) == ".json") {
    const gamescape::Population pop = gamescape::read_population(input);
    const gamescape::GameDefinition game = gamescape::game_from_id(pop.game_id);
    eval = gamescape::build_eval_matrix(game, pop);
  } else {
    eval = gamescape::EvalMatrix(gamescape::read_matrix_csv_file(input), tol);
  }

  const gamescape::NashMixture nash = gamescape::max_entropy_nash(eval);
  const gamescape::HodgeParts hodge = gamescape::hodge_decompose(eval);
  gamescape::Embedding embedding;
  if (embedding_name == "schur") {
    embedding = gamescape::schur_embedding(eval, 2);
  } else if (embedding_name == "pca") {
    embedding = gamescape::pca_embedding(eval, std::min<int>(2, static_cast<int>(eval.size())));
  } else if (embedding_name == "svd") {
    embedding = gamescape::svd_embedding(eval, std::min<int>(2, static_cast<int>(eval.size())));
  } else {
    throw std::invalid_argument("unknown embedding: " + embedding_name);
  }

  json report;
  report["n"] = eval.size();
  report["nash"] = {{"probs", nash.probs},
                    {"residual", nash.residual},
                    {"entropy", nash.entropy}};
  report["diversity"] = gamescape::effective_diversity(eval, nash);
  report["rank"] = gamescape::numerical_rank(eval);
  report["hodge"] = {{"transitive_norm", hodge.transitive.frobenius_norm()},
                     {"cyclic_norm", hodge.cyclic.frobenius_norm()}};
  report["hull_area"] = gamescape::schur_hull_area(eval);
  json redundant = json::array();
  for (std::size_t i = 0; i < eval.size(); ++i)
    redundant.push_back(eval.size() >= 2 && gamescape::is_redundant(eval, i, 1e-9));
  report["redundant"] = redundant;
  report["embedding"] = {{"method", embedding_name},
                         {"recon_error", embedding.recon_error},
                         {"coords", matrix_to_json(embedding.coords)}};

  if (out_dir.empty()) {
    std::cout << report.dump(2) << '\n';
  } else {
    fs::create_directories(out_dir);
    const fs::path base(out_dir);
    std::ofstream os(base / "analysis.json");
    if (!os.good()) throw std::invalid_argument("cannot write in " + out_dir);
    os << report.dump(2) << '\n';
    gamescape::write_embedding((base / "embedding.csv").string(),
                               (base / "embedding.json").string(), embedding);
    gamescape::write_matrix_csv((base / "hodge_transitive.csv").string(), hodge.transitive);
    gamescape::write_matrix_csv((base / "hodge_cyclic.csv").string(), hodge.cyclic);
    std::ofstream rs(base / "hodge_ratings.csv");
    for (double r : hodge.ratings) rs << gamescape::format_double(r) << '\n';
    std::cout << out_dir << '\n';
  }
  return 0;
}

int cmd_synth(const std::string& kind, int n, double sigma, std::uint64_t seed,
              const std::string& out_path) {
  gamescape::SynthSpec spec;
  spec.kind = gamescape::synth_kind_from_string(kind);
  spec.n = n;
  spec.sigma = sigma;
  spec.seed = seed;
  const gamescape::EvalMatrix matrix = gamescape::synth_payoff(spec);
  gamescape::write_matrix_csv(out_path, matrix.entries());
  const gamescape::HodgeParts hodge = gamescape::hodge_decompose(matrix);
  std::cout << "transitive_norm=" << gamescape::format_double(hodge.transitive.frobenius_norm())
            << " cyclic_norm=" << gamescape::format_double(hodge.cyclic.frobenius_norm())
            << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"population training and gamescape analysis for symmetric zero-sum games"};
  app.require_subcommand(1);

  std::string config_path, out_path, embedding = "schur";
  std::string pop_p, pop_q, analyze_input;
  std::string synth_kind = "random", synth_out;
  int synth_n = 40;
  double synth_sigma = 0.02, tol = 1e-9;
  std::uint64_t synth_seed = 0;
  std::optional<std::uint64_t> seed_override;
  std::uint64_t seed_value = 0;

  CLI::App* run = app.add_subcommand("run", "execute a training run from a JSON config");
  run->add_option("--config", config_path, "run configuration file")->required();
  run->add_option("--out", out_path, "artifact directory");
  CLI::Option* seed_opt = run->add_option("--seed", seed_value, "override the config seed");

  CLI::App* compare = app.add_subcommand("compare", "relative performance of two populations");
  compare->add_option("population_p", pop_p, "first population file")->required();
  compare->add_option("population_q", pop_q, "second population file")->required();
  compare->add_option("--out", out_path, "write the JSON report here instead of stdout");
  compare->add_option("--tol", tol, "solver tolerance");

  CLI::App* analyze = app.add_subcommand("analyze", "analyze a matrix CSV or population file");
  analyze->add_option("input", analyze_input, "matrix .csv or population .json")->required();
  analyze->add_option("--embedding", embedding, "schur | pca | svd")
      ->check(CLI::IsMember({"schur", "pca", "svd"}));
  analyze->add_option("--out", out_path, "write the JSON+CSV bundle here instead of stdout");
  analyze->add_option("--tol", tol, "antisymmetry tolerance for CSV input");

  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic payoff matrix");
  synth->add_option("--kind", synth_kind,
                    "random | almost_transitive | almost_cyclic | mixed | almost_monotonic");
  synth->add_option("--n", synth_n, "matrix size");
  synth->add_option("--sigma", synth_sigma, "noise scale");
  synth->add_option("--seed", synth_seed, "generator seed");
  synth->add_option("--out", synth_out, "output CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      if (seed_opt->count() > 0) seed_override = seed_value;
      return cmd_run(config_path, out_path, seed_override);
    }
    if (compare->parsed()) return cmd_compare(pop_p, pop_q, out_path, tol);
    if (analyze->parsed()) return cmd_analyze(analyze_input, embedding, out_path, tol);
    if (synth->parsed()) return cmd_synth(synth_kind, synth_n, synth_sigma, synth_seed, synth_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
