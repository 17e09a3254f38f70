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

#ifndef GAMESCAPE_TYPES_HPP_
#define GAMESCAPE_TYPES_HPP_

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gamescape/matrix.hpp"
#include "gamescape/rng.hpp"

namespace gamescape {

using Point2 = std::array<double, 2>;

// A strategy in a functional-form game: a parameter vector plus the id of
// the game it plays. The tag carries provenance (seed, iteration, origin).
struct Agent {
  std::string game_id;
  std::vector<double> params;
  std::string tag;
};

struct Population {
  std::string game_id;
  std::vector<Agent> agents;
  std::map<std::string, std::string> meta;

  std::size_t size() const { return agents.size(); }
};

// A symmetric zero-sum functional-form game. `phi` must be antisymmetric:
// phi(v, w, s) == -phi(w, v, s). `grad`, when set, returns d phi(v, w) / dv
// for the gradient oracle; games without it fall back to central finite
// differences. `project` maps a raw parameter vector back onto the game's
// feasible set (for example the unit-width constraint in the spatial
// allocation game) and may be empty.
struct GameDefinition {
  std::string game_id;
  std::size_t param_dim = 0;
  std::function<double(const Agent&, const Agent&, std::uint64_t)> phi;
  std::function<std::vector<double>(const Agent&, const Agent&)> grad;
  std::function<void(Agent&)> project;
  std::function<Agent(Rng&)> random_agent;

  double evaluate(const Agent& v, const Agent& w, std::uint64_t seed = 0) const {
    return phi(v, w, seed);
  }
};

inline void validate_agent(const GameDefinition& game, const Agent& agent) {
  detail::require(agent.game_id == game.game_id,
                  "agent plays game '" + agent.game_id + "', expected '" + game.game_id + "'");
  detail::require(agent.params.size() == game.param_dim,
                  "agent parameter length " + std::to_string(agent.params.size()) +
                      " does not match game dimension " + std::to_string(game.param_dim));
  for (double p : agent.params)
    detail::require(std::isfinite(p), "agent has non-finite parameter");
}

inline Population make_population(std::string game_id, std::vector<Agent> agents,
                                  std::map<std::string, std::string> meta = {}) {
  detail::require(!agents.empty(), "population must be non-empty");
  for (const Agent& a : agents)
    detail::require(a.game_id == game_id, "population mixes game ids");
  return Population{std::move(game_id), std::move(agents), std::move(meta)};
}

inline void validate_population(const GameDefinition& game, const Population& pop) {
  detail::require(!pop.agents.empty(), "population must be non-empty");
  for (const Agent& a : pop.agents) validate_agent(game, a);
}

}  // namespace gamescape

#endif  // GAMESCAPE_TYPES_HPP_
