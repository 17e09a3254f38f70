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
// Concrete functional-form games: the disc game and its rock-paper-scissors
// embedding, rating (transitive/Elo) games, symplectic games and long-cycle
// matrices, Colonel Blotto, and a differentiable spatial allocation game
// where agents place weighted servers to capture customers.

#ifndef GAMESCAPE_GAMES_HPP_
#define GAMESCAPE_GAMES_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gamescape/eval.hpp"
#include "gamescape/matrix.hpp"
#include "gamescape/rng.hpp"
#include "gamescape/types.hpp"

namespace gamescape {

// ---------------------------------------------------------------------------
// Disc game and embeddings

// Cross product payoff v1*w2 - v2*w1. Cyclic: payoffs integrate to zero
// over any centered distribution of opponents.
inline double disc_phi(const std::vector<double>& v, const std::vector<double>& w) {
  detail::require(v.size() == 2 && w.size() == 2, "disc game agents are 2-vectors");
  detail::require(std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(w[0]) &&
                      std::isfinite(w[1]),
                  "disc game agents must be finite");
  return v[0] * w[1] - v[1] * w[0];
}

inline GameDefinition make_disc_game() {
  GameDefinition game;
  game.game_id = "disc";
  game.param_dim = 2;
  game.phi = [](const Agent& v, const Agent& w, std::uint64_t) {
    return disc_phi(v.params, w.params);
  };
  game.grad = [](const Agent&, const Agent& w) {
    return std::vector<double>{w.params[1], -w.params[0]};
  };
  game.random_agent = [](Rng& rng) {
    // Uniform in the unit disc.
    double x, y;
    do {
      x = rng.uniform(-1.0, 1.0);
      y = rng.uniform(-1.0, 1.0);
    } while (x * x + y * y > 1.0);
    return Agent{"disc", {x, y}, ""};
  };
  return game;
}

// Three disc-game agents at angles 0, 2π/3, 4π/3 whose evaluation matrix is
// exactly eps² times the unit rock-paper-scissors matrix. The radius
// eps·sqrt(2/sqrt(3)) makes the pairwise cross products equal eps².
inline Population rps_embedding(double eps) {
  detail::require(eps >= 0.0 && eps <= 1.0, "rps_embedding: eps must lie in [0, 1]");
  const double radius = eps * std::sqrt(2.0 / std::sqrt(3.0));
  const double two_thirds_pi = 2.0943951023931954923;
  std::vector<Agent> agents;
  const char* names[3] = {"rock", "paper", "scissors"};
  for (int k = 0; k < 3; ++k) {
    const double angle = two_thirds_pi * k;
    agents.push_back(
        Agent{"disc", {radius * std::cos(angle), radius * std::sin(angle)}, names[k]});
  }
  return make_population("disc", std::move(agents), {{"eps", format_double(eps)}});
}

// ---------------------------------------------------------------------------
// Rating games

// Purely transitive game on scalar ratings: phi(v, w) = v - w.
inline GameDefinition make_transitive_game() {
  GameDefinition game;
  game.game_id = "transitive";
  game.param_dim = 1;
  game.phi = [](const Agent& v, const Agent& w, std::uint64_t) {
    return v.params[0] - w.params[0];
  };
  game.grad = [](const Agent&, const Agent&) { return std::vector<double>{1.0}; };
  game.random_agent = [](Rng& rng) { return Agent{"transitive", {rng.normal()}, ""}; };
  return game;
}

// Win probability sigma(f(v) - f(w)) with a logistic sigma, rendered
// antisymmetric as P - 1/2. Computed as (sigma(x) - sigma(-x))/2, which is
// the same value but exactly antisymmetric in floating point.
inline double elo_payoff(double rating_diff, double alpha) {
  const double a = 1.0 / (1.0 + std::exp(-alpha * rating_diff));
  const double b = 1.0 / (1.0 + std::exp(alpha * rating_diff));
  return (a - b) / 2.0;
}

inline GameDefinition make_elo_game(double alpha = 1.0) {
  detail::require(alpha > 0.0, "elo game: alpha must be positive");
  GameDefinition game;
  game.game_id = alpha == 1.0 ? "elo" : "elo:" + format_double(alpha);
  game.param_dim = 1;
  game.phi = [alpha](const Agent& v, const Agent& w, std::uint64_t) {
    return elo_payoff(v.params[0] - w.params[0], alpha);
  };
  game.grad = [alpha](const Agent& v, const Agent& w) {
    const double s = 1.0 / (1.0 + std::exp(-alpha * (v.params[0] - w.params[0])));
    return std::vector<double>{alpha * s * (1.0 - s)};
  };
  const std::string id = game.game_id;
  game.random_agent = [id](Rng& rng) { return Agent{id, {rng.normal()}, ""}; };
  return game;
}

// Evaluation matrix of the Elo model on a fixed rating vector.
inline EvalMatrix elo_matrix(const std::vector<double>& ratings, double alpha) {
  for (double r : ratings) detail::require(std::isfinite(r), "elo_matrix: non-finite rating");
  const std::size_t n = ratings.size();
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double p = elo_payoff(ratings[i] - ratings[j], alpha);
      a(i, j) = p;
      a(j, i) = -p;
    }
  return EvalMatrix(std::move(a), 0.0);
}

// ---------------------------------------------------------------------------
// Symplectic games

// Blockwise disc game: phi(v, w) = vᵀ Ω w with Ω the block-diagonal 2x2
// rotation generator, oriented so d = 1 coincides with disc_phi.
inline double symplectic_phi(const std::vector<double>& v, const std::vector<double>& w) {
  detail::require(v.size() == w.size(), "symplectic game: dimension mismatch");
  detail::require(v.size() >= 2 && v.size() % 2 == 0,
                  "symplectic game needs even dimension 2d");
  double acc = 0.0;
  for (std::size_t b = 0; b + 1 < v.size(); b += 2)
    acc += v[b] * w[b + 1] - v[b + 1] * w[b];
  return acc;
}

inline GameDefinition make_symplectic_game(int d) {
  detail::require(d >= 1, "symplectic game: d must be positive");
  GameDefinition game;
  game.game_id = "symplectic:" + std::to_string(d);
  game.param_dim = static_cast<std::size_t>(2 * d);
  game.phi = [](const Agent& v, const Agent& w, std::uint64_t) {
    return symplectic_phi(v.params, w.params);
  };
  game.grad = [](const Agent&, const Agent& w) {
    std::vector<double> g(w.params.size());
    for (std::size_t b = 0; b + 1 < w.params.size(); b += 2) {
      g[b] = w.params[b + 1];
      g[b + 1] = -w.params[b];
    }
    return g;
  };
  const std::string id = game.game_id;
  const std::size_t dim = game.param_dim;
  game.random_agent = [id, dim](Rng& rng) {
    // Uniform direction, radius pushed toward the boundary of the unit ball.
    std::vector<double> p(dim);
    double norm2 = 0.0;
    for (double& x : p) {
      x = rng.normal();
      norm2 += x * x;
    }
    const double r = std::pow(rng.uniform(), 1.0 / static_cast<double>(dim));
    const double scale = r / std::sqrt(std::max(norm2, 1e-300));
    for (double& x : p) x *= scale;
    return Agent{id, std::move(p), ""};
  };
  return game;
}

// phi(v, w) = Σ_i g_i(f_i(v)ᵀ Ω f_i(w)) for user maps f_i into an even
// dimension and odd scalar functions g_i. Oddness of g keeps the payoff
// antisymmetric.
struct DeformedTerm {
  std::function<std::vector<double>(const std::vector<double>&)> map;  // into R^{2d}
  std::function<double(double)> odd_fn;
};

inline GameDefinition make_deformed_symplectic_game(std::string game_id, std::size_t param_dim,
                                                    std::vector<DeformedTerm> terms) {
  detail::require(!terms.empty(), "deformed symplectic game needs at least one term");
  GameDefinition game;
  game.game_id = std::move(game_id);
  game.param_dim = param_dim;
  game.phi = [terms](const Agent& v, const Agent& w, std::uint64_t) {
    double acc = 0.0;
    for (const DeformedTerm& t : terms)
      acc += t.odd_fn(symplectic_phi(t.map(v.params), t.map(w.params)));
    return acc;
  };
  const std::string id = game.game_id;
  game.random_agent = [id, param_dim](Rng& rng) {
    std::vector<double> p(param_dim);
    for (double& x : p) x = rng.normal();
    return Agent{id, std::move(p), ""};
  };
  return game;
}

// Evaluation matrix of n agents forming one long cycle: agent i beats agent
// i+1 (mod n) and ties everyone else. Rank is n-1 for odd n, n-2 for even n.
inline EvalMatrix long_cycle_matrix(int n) {
  detail::require(n >= 3, "long_cycle_matrix: n must be at least 3");
  const std::size_t un = static_cast<std::size_t>(n);
  Matrix a(un, un);
  for (std::size_t i = 0; i < un; ++i) {
    const std::size_t j = (i + 1) % un;
    a(i, j) = 1.0;
    a(j, i) = -1.0;
  }
  return EvalMatrix(std::move(a), 0.0);
}

// ---------------------------------------------------------------------------
// Colonel Blotto

struct BlottoConfig {
  int areas = 3;
  int coins = 10;
};

// softmax(logits) * coins rounded by largest remainder. Floors first, then
// hands the leftover coins to the largest fractional parts, ties to the
// lowest index. The output always sums to exactly `coins`.
inline std::vector<int> blotto_discretize(const std::vector<double>& logits, int coins) {
  detail::require(coins >= 0, "blotto_discretize: coins must be nonnegative");
  for (double l : logits) detail::require(std::isfinite(l), "blotto_discretize: non-finite logit");
  const std::size_t n = logits.size();
  detail::require(n >= 1, "blotto_discretize: empty logits");

  const double top = *std::max_element(logits.begin(), logits.end());
  std::vector<double> share(n);
  double z = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    share[i] = std::exp(logits[i] - top);
    z += share[i];
  }
  std::vector<int> alloc(n);
  std::vector<std::pair<double, std::size_t>> frac(n);
  int assigned = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double exact = share[i] / z * static_cast<double>(coins);
    alloc[i] = static_cast<int>(std::floor(exact));
    frac[i] = {exact - std::floor(exact), i};
    assigned += alloc[i];
  }
  int leftover = coins - assigned;
  std::sort(frac.begin(), frac.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  for (std::size_t k = 0; leftover > 0 && k < n; ++k, --leftover) ++alloc[frac[k].second];
  return alloc;
}

// Per-area scoring: +1 to the strictly larger allocation, ties score
// nothing. The payoff is the normalized area differential in [-1, 1]; the
// win/loss indicator of a single match is sign(phi).
inline double blotto_phi(const Agent& v, const Agent& w, const BlottoConfig& cfg) {
  const std::vector<int> a = blotto_discretize(v.params, cfg.coins);
  const std::vector<int> b = blotto_discretize(w.params, cfg.coins);
  int v_areas = 0;
  int w_areas = 0;
  for (int i = 0; i < cfg.areas; ++i) {
    if (a[i] > b[i])
      ++v_areas;
    else if (b[i] > a[i])
      ++w_areas;
  }
  return static_cast<double>(v_areas - w_areas) / static_cast<double>(cfg.areas);
}

inline GameDefinition make_blotto_game(const BlottoConfig& cfg) {
  detail::require(cfg.areas >= 1 && cfg.coins >= 1, "blotto: areas and coins must be positive");
  GameDefinition game;
  game.game_id = "blotto:" + std::to_string(cfg.areas) + ":" + std::to_string(cfg.coins);
  game.param_dim = static_cast<std::size_t>(cfg.areas);
  game.phi = [cfg](const Agent& v, const Agent& w, std::uint64_t) {
    return blotto_phi(v, w, cfg);
  };
  const std::string id = game.game_id;
  const std::size_t dim = game.param_dim;
  game.random_agent = [id, dim](Rng& rng) {
    std::vector<double> p(dim);
    for (double& x : p) x = rng.normal();
    return Agent{id, std::move(p), ""};
  };
  return game;
}

// ---------------------------------------------------------------------------
// Differentiable Lotto

struct LottoConfig {
  std::vector<Point2> customers;
  int servers_per_agent = 4;
  // When set, each evaluation draws a fresh customer set (same size as
  // `customers`) from its seed; averaging over eval samples then estimates
  // the expected payoff over random customer placements.
  bool resample_customers = false;
};

// c customers drawn i.i.d. uniform from the square [-1, 1]^2.
inline std::vector<Point2> sample_customers(int c, std::uint64_t seed) {
  detail::require(c >= 1, "sample_customers: need at least one customer");
  Rng rng(Rng::mix(seed, 0xc005u));
  std::vector<Point2> out(static_cast<std::size_t>(c));
  for (Point2& p : out) {
    p[0] = rng.uniform(-1.0, 1.0);
    p[1] = rng.uniform(-1.0, 1.0);
  }
  return out;
}

// One agent's strategy: a distribution of mass over k planar servers.
struct LottoAgentView {
  std::vector<double> masses;
  std::vector<Point2> positions;
};

// Parameter layout: k mass logits followed by k (x, y) pairs. Masses go
// through a softmax so oracle steps stay unconstrained.
inline LottoAgentView lotto_view(const std::vector<double>& params, int k) {
  detail::require(params.size() == static_cast<std::size_t>(3 * k),
                  "lotto agent needs 3k parameters");
  LottoAgentView view;
  view.masses.resize(k);
  double top = params[0];
  for (int j = 1; j < k; ++j) top = std::max(top, params[j]);
  double z = 0.0;
  for (int j = 0; j < k; ++j) {
    view.masses[j] = std::exp(params[j] - top);
    z += view.masses[j];
  }
  for (int j = 0; j < k; ++j) view.masses[j] /= z;
  view.positions.resize(k);
  for (int j = 0; j < k; ++j)
    view.positions[j] = {params[k + 2 * j], params[k + 2 * j + 1]};
  return view;
}

namespace detail {
inline double sq_dist(const Point2& a, const Point2& b) {
  const double dx = a[0] - b[0];
  const double dy = a[1] - b[1];
  return dx * dx + dy * dy;
}
}  // namespace detail

// Customers are softly assigned to all 2k servers of both agents by one
// joint softmax over negative squared distances; each agent collects its
// mass-weighted share.
inline double lotto_phi(const LottoAgentView& a, const LottoAgentView& b,
                        const LottoConfig& cfg) {
  const std::size_t k = a.masses.size();
  detail::require(b.masses.size() == k, "lotto agents must have the same number of servers");
  detail::require(!cfg.customers.empty(), "lotto: customer set is empty");
  std::vector<double> z(2 * k);
  double payoff = 0.0;
  for (const Point2& c : cfg.customers) {
    for (std::size_t j = 0; j < k; ++j) {
      z[j] = -detail::sq_dist(c, a.positions[j]);
      z[k + j] = -detail::sq_dist(c, b.positions[j]);
    }
    const double top = *std::max_element(z.begin(), z.end());
    double denom = 0.0;
    for (double& zj : z) {
      zj = std::exp(zj - top);
      denom += zj;
    }
    for (std::size_t j = 0; j < k; ++j)
      payoff += (a.masses[j] * z[j] - b.masses[j] * z[k + j]) / denom;
  }
  return payoff;
}

// Width of an agent: expected distance of its server cloud from the cloud's
// barycenter (uniform over the k points). Agents are constrained to width
// one; this rescales the positions about the barycenter. Zero width (all
// servers coincident) cannot be rescaled and is an error.
//
// The width is deliberately not mass-weighted: weighting by the masses lets
// an agent concentrate its mass on one server and satisfy the constraint
// with runaway zero-mass servers, collapsing the game to a dominant
// point-mass strategy.
inline LottoAgentView lotto_project_width(const LottoAgentView& a) {
  const std::size_t k = a.masses.size();
  detail::require(k >= 2, "width projection requires at least two servers");
  const double uniform = 1.0 / static_cast<double>(k);
  Point2 bary = {0.0, 0.0};
  for (std::size_t j = 0; j < k; ++j) {
    bary[0] += uniform * a.positions[j][0];
    bary[1] += uniform * a.positions[j][1];
  }
  double width = 0.0;
  for (std::size_t j = 0; j < k; ++j)
    width += uniform * std::sqrt(detail::sq_dist(a.positions[j], bary));
  detail::require(width > 1e-12, "degenerate agent: width is zero");
  LottoAgentView out = a;
  for (std::size_t j = 0; j < k; ++j) {
    out.positions[j][0] = bary[0] + (a.positions[j][0] - bary[0]) / width;
    out.positions[j][1] = bary[1] + (a.positions[j][1] - bary[1]) / width;
  }
  return out;
}

// Analytic gradient of lotto_phi in the first agent's parameters
// (k mass logits, then 2k coordinates).
inline std::vector<double> lotto_grad(const LottoAgentView& a, const LottoAgentView& b,
                                      const LottoConfig& cfg) {
  const std::size_t k = a.masses.size();
  std::vector<double> grad(3 * k, 0.0);
  std::vector<double> s(2 * k);
  std::vector<double> mass_grad(k, 0.0);  // d phi / d masses
  for (const Point2& c : cfg.customers) {
    for (std::size_t j = 0; j < k; ++j) {
      s[j] = -detail::sq_dist(c, a.positions[j]);
      s[k + j] = -detail::sq_dist(c, b.positions[j]);
    }
    const double top = *std::max_element(s.begin(), s.end());
    double denom = 0.0;
    for (double& sj : s) {
      sj = std::exp(sj - top);
      denom += sj;
    }
    double phi_c = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
      s[j] /= denom;
      s[k + j] /= denom;
      phi_c += a.masses[j] * s[j] - b.masses[j] * s[k + j];
    }
    for (std::size_t j = 0; j < k; ++j) {
      mass_grad[j] += s[j];
      const double coef = s[j] * (a.masses[j] - phi_c) * 2.0;
      grad[k + 2 * j] += coef * (c[0] - a.positions[j][0]);
      grad[k + 2 * j + 1] += coef * (c[1] - a.positions[j][1]);
    }
  }
  // Chain through the mass softmax.
  double mean = 0.0;
  for (std::size_t j = 0; j < k; ++j) mean += a.masses[j] * mass_grad[j];
  for (std::size_t j = 0; j < k; ++j) grad[j] = a.masses[j] * (mass_grad[j] - mean);
  return grad;
}

inline GameDefinition make_lotto_game(const LottoConfig& cfg, std::string game_id = "") {
  detail::require(!cfg.customers.empty(), "lotto: customer set is empty");
  detail::require(cfg.servers_per_agent >= 2, "lotto: need at least two servers per agent");
  const int k = cfg.servers_per_agent;
  GameDefinition game;
  game.game_id =
      game_id.empty() ? "lotto:" + std::to_string(k) + ":custom" : std::move(game_id);
  game.param_dim = static_cast<std::size_t>(3 * k);
  game.phi = [cfg, k](const Agent& v, const Agent& w, std::uint64_t seed) {
    if (!cfg.resample_customers)
      return lotto_phi(lotto_view(v.params, k), lotto_view(w.params, k), cfg);
    LottoConfig drawn = cfg;
    drawn.customers = sample_customers(static_cast<int>(cfg.customers.size()), seed);
    return lotto_phi(lotto_view(v.params, k), lotto_view(w.params, k), drawn);
  };
  game.grad = [cfg, k](const Agent& v, const Agent& w) {
    return lotto_grad(lotto_view(v.params, k), lotto_view(w.params, k), cfg);
  };
  game.project = [k](Agent& agent) {
    const LottoAgentView projected = lotto_project_width(lotto_view(agent.params, k));
    for (int j = 0; j < k; ++j) {
      agent.params[k + 2 * j] = projected.positions[j][0];
      agent.params[k + 2 * j + 1] = projected.positions[j][1];
    }
  };
  const std::string id = game.game_id;
  game.random_agent = [id, k](Rng& rng) {
    std::vector<double> p(3 * k);
    for (int j = 0; j < k; ++j) p[j] = rng.normal();
    for (int j = 0; j < 2 * k; ++j) p[k + j] = rng.uniform(-1.0, 1.0);
    Agent agent{id, std::move(p), ""};
    const LottoAgentView projected = lotto_project_width(lotto_view(agent.params, k));
    for (int j = 0; j < k; ++j) {
      agent.params[k + 2 * j] = projected.positions[j][0];
      agent.params[k + 2 * j + 1] = projected.positions[j][1];
    }
    return agent;
  };
  return game;
}

inline void write_customers_csv(const std::string& path, const std::vector<Point2>& customers) {
  std::ofstream os(path);
  detail::require(os.good(), "cannot open file for writing: " + path);
  for (const Point2& p : customers)
    os << format_double(p[0]) << ',' << format_double(p[1]) << '\n';
}

inline std::vector<Point2> read_customers_csv(const std::string& path) {
  std::ifstream is(path);
  detail::require(is.good(), "cannot open file for reading: " + path);
  std::vector<Point2> out;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string x, y;
    detail::require(static_cast<bool>(std::getline(ss, x, ',')) &&
                        static_cast<bool>(std::getline(ss, y, ',')),
                    "customer file rows must be 'x,y'");
    out.push_back({std::stod(x), std::stod(y)});
  }
  detail::require(!out.empty(), "customer file is empty: " + path);
  return out;
}

// ---------------------------------------------------------------------------
// Registry

namespace detail {
inline std::vector<std::string> split(const std::string& s, char sep, std::size_t max_fields) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (fields.size() + 1 < max_fields) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) break;
    fields.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  fields.push_back(s.substr(start));
  return fields;
}
}  // namespace detail

// Builds a game from its string id:
//   "disc" | "transitive" | "elo[:<alpha>]" | "symplectic:<d>"
//   "blotto:<areas>:<coins>" | "lotto:<k>:<customer-file>"
inline GameDefinition game_from_id(const std::string& id) {
  const std::vector<std::string> f = detail::split(id, ':', 3);
  const std::string& kind = f[0];
  if (kind == "disc") {
    detail::require(f.size() == 1, "disc takes no parameters");
    return make_disc_game();
  }
  if (kind == "transitive") {
    detail::require(f.size() == 1, "transitive takes no parameters");
    return make_transitive_game();
  }
  if (kind == "elo") {
    detail::require(f.size() <= 2, "elo takes at most one parameter");
    return make_elo_game(f.size() == 2 ? std::stod(f[1]) : 1.0);
  }
  if (kind == "symplectic") {
    detail::require(f.size() == 2, "symplectic id is 'symplectic:<d>'");
    return make_symplectic_game(std::stoi(f[1]));
  }
  if (kind == "blotto") {
    detail::require(f.size() == 3, "blotto id is 'blotto:<areas>:<coins>'");
    return make_blotto_game(BlottoConfig{std::stoi(f[1]), std::stoi(f[2])});
  }
  if (kind == "lotto") {
    detail::require(f.size() == 3, "lotto id is 'lotto:<k>:<customer-file>'");
    LottoConfig cfg;
    cfg.servers_per_agent = std::stoi(f[1]);
    cfg.customers = read_customers_csv(f[2]);
    return make_lotto_game(cfg, id);
  }
  throw std::invalid_argument("unknown game id: " + id);
}

}  // namespace gamescape

#endif  // GAMESCAPE_GAMES_HPP_
