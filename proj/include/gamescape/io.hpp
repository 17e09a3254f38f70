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
// File formats: population JSON documents (lossless round-trip), JSON
// reports for the CLI, JSON-lines run logs, and the CSV artifacts written
// by experiment runs.

#ifndef GAMESCAPE_IO_HPP_
#define GAMESCAPE_IO_HPP_

#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gamescape/analytics.hpp"
#include "gamescape/hodge.hpp"
#include "gamescape/matrix.hpp"
#include "gamescape/metrics.hpp"
#include "gamescape/nash.hpp"
#include "gamescape/psro.hpp"
#include "gamescape/types.hpp"

namespace gamescape {

inline constexpr int kPopulationFormatVersion = 1;

inline nlohmann::json population_to_json(const Population& pop) {
  nlohmann::json doc;
  doc["format_version"] = kPopulationFormatVersion;
  doc["game_id"] = pop.game_id;
  doc["meta"] = pop.meta;
  doc["agents"] = nlohmann::json::array();
  for (const Agent& a : pop.agents)
    doc["agents"].push_back({{"tag", a.tag}, {"params", a.params}});
  return doc;
}

inline Population population_from_json(const nlohmann::json& doc) {
  detail::require(doc.value("format_version", 0) == kPopulationFormatVersion,
                  "unsupported population file version");
  std::vector<Agent> agents;
  const std::string game_id = doc.at("game_id").get<std::string>();
  for (const nlohmann::json& a : doc.at("agents"))
    agents.push_back(Agent{game_id, a.at("params").get<std::vector<double>>(),
                           a.value("tag", std::string{})});
  std::map<std::string, std::string> meta;
  if (doc.contains("meta")) meta = doc.at("meta").get<std::map<std::string, std::string>>();
  return make_population(game_id, std::move(agents), std::move(meta));
}

inline void write_population(const std::string& path, const Population& pop) {
  std::ofstream os(path);
  detail::require(os.good(), "cannot open file for writing: " + path);
  os << population_to_json(pop).dump(2) << '\n';
}

inline Population read_population(const std::string& path) {
  std::ifstream is(path);
  detail::require(is.good(), "cannot open file for reading: " + path);
  nlohmann::json doc;
  is >> doc;
  return population_from_json(doc);
}

// ---------------------------------------------------------------------------
// Reports

inline nlohmann::json to_json(const NashReport& report) {
  return {{"min_payoff", report.min_payoff},
          {"simplex_residual", report.simplex_residual},
          {"min_prob", report.min_prob},
          {"pass", report.pass}};
}

inline nlohmann::json to_json(const PerfReport& report) {
  return {{"value", report.value},
          {"row_mixture", report.row_mixture},
          {"col_mixture", report.col_mixture}};
}

inline nlohmann::json to_json(const RpsReduction& red) {
  nlohmann::json meta = nlohmann::json::array();
  for (std::size_t i = 0; i < 3; ++i)
    meta.push_back({red.meta_matrix(i, 0), red.meta_matrix(i, 1), red.meta_matrix(i, 2)});
  return {{"weights_r", red.weights_r},
          {"weights_p", red.weights_p},
          {"weights_s", red.weights_s},
          {"meta_matrix", meta},
          {"alpha", red.alpha}};
}

inline nlohmann::json to_json(const IterationRecord& rec) {
  return {{"iteration", rec.iteration}, {"pop_size", rec.pop_size},
          {"nash", rec.nash},           {"diversity", rec.diversity},
          {"hull_area", rec.hull_area}, {"queries", rec.queries},
          {"trained", rec.trained},     {"improved", rec.improved},
          {"redundant", rec.redundant}, {"converged", rec.converged}};
}

// ---------------------------------------------------------------------------
// Run artifacts

// Writes everything a run produces into `dir`:
//   run_log.jsonl      one iteration record per line
//   metrics.csv        iteration, diversity, hull_area, queries
//   final_population.json
//   eval_NNNN.csv      evaluation matrix at each iteration
inline void write_run_artifacts(const std::string& dir, const PsroRunLog& log) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path base(dir);
  {
    std::ofstream os(base / "run_log.jsonl");
    detail::require(os.good(), "cannot write run log in " + dir);
    for (const IterationRecord& rec : log.records) os << to_json(rec).dump() << '\n';
  }
  {
    std::ofstream os(base / "metrics.csv");
    detail::require(os.good(), "cannot write metrics in " + dir);
    os << "iteration,diversity,hull_area,queries\n";
    for (const IterationRecord& rec : log.records)
      os << rec.iteration << ',' << format_double(rec.diversity) << ','
         << format_double(rec.hull_area) << ',' << rec.queries << '\n';
  }
  write_population((base / "final_population.json").string(), log.final_population);
  for (const IterationRecord& rec : log.records) {
    char name[32];
    std::snprintf(name, sizeof(name), "eval_%04d.csv", rec.iteration);
    write_matrix_csv((base / name).string(), rec.eval);
  }
}

// Embedding artifacts: a CSV of coordinates (one point per row) plus a JSON
// sidecar naming the method and its reconstruction residual.
inline void write_embedding(const std::string& csv_path, const std::string& sidecar_path,
                            const Embedding& embedding) {
  write_matrix_csv(csv_path, embedding.coords);
  std::ofstream os(sidecar_path);
  detail::require(os.good(), "cannot open file for writing: " + sidecar_path);
  nlohmann::json doc = {{"method", embedding_method_name(embedding.method)},
                        {"recon_error", embedding.recon_error}};
  os << doc.dump(2) << '\n';
}

}  // namespace gamescape

#endif  // GAMESCAPE_IO_HPP_
