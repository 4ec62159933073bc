#include "netfp/games.hpp"

#include <cmath>

#include "netfp/errors.hpp"

namespace netfp {

namespace {

constexpr double kStructureTolerance = 1e-9;

double action_value(const std::vector<double>& grid, ActionId a) {
  if (a.value < 1 || static_cast<std::size_t>(a.value) > grid.size()) throw DomainError("action is not on the grid");
  return grid[a.offset()];
}

// Mean and variance of a 1-D state belief.
std::pair<double, double> scalar_moments(const StateBelief& mu) {
  if (state_dimension(mu) != 1) throw DomainError("beauty contest state must be one-dimensional");
  return {belief_mean(mu)(0), belief_covariance(mu)(0, 0)};
}

std::vector<ActionId> random_profile(const GameSpec& game, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> action(1, game.m);
  std::vector<ActionId> a(static_cast<std::size_t>(game.n));
  for (auto& x : a) x = ActionId{action(rng)};
  return a;
}

std::pair<AgentId, AgentId> random_pair(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> agent(0, n - 1);
  const AgentId i = agent(rng);
  AgentId j = agent(rng);
  while (j == i) j = agent(rng);
  return {i, j};
}

WorldState sample_state(const GameSpec& game, std::mt19937_64& rng) {
  if (!game.sample_state) throw DomainError("game '" + game.name + "' has no state sampler");
  return game.sample_state(rng);
}

}  // namespace

// ---- beauty contest ---------------------------------------------------------

std::vector<double> BeautyContestSpec::default_grid() {
  std::vector<double> grid;
  for (int d = 0; d <= 180; d += 5) grid.push_back(d);
  return grid;
}

void validate(const BeautyContestSpec& spec) {
  if (spec.n < 2) throw DomainError("beauty contest needs at least two agents");
  if (!(spec.lambda >= 0.0 && spec.lambda <= 1.0)) throw DomainError("lambda outside [0, 1]");
  if (spec.grid.empty()) throw DomainError("beauty contest grid is empty");
  if (!(spec.signal_std > 0.0)) throw DomainError("signal_std must be positive");
  if (!(spec.nominal_variance >= 0.0)) throw DomainError("nominal_variance must be nonnegative");
}

std::vector<double> beauty_payoff(const BeautyContestSpec& spec, std::span<const ActionId> a, double theta) {
  if (static_cast<int>(a.size()) != spec.n) throw DomainError("joint action has the wrong length");
  std::vector<double> x(a.size());
  double total = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    x[k] = action_value(spec.grid, a[k]);
    total += x[k];
  }
  std::vector<double> u(a.size());
  const double others = static_cast<double>(spec.n - 1);
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double mean_others = (total - x[k]) / others;
    const double est = x[k] - theta;
    const double coord = x[k] - mean_others;
    u[k] = -spec.lambda * est * est - (1.0 - spec.lambda) * coord * coord;
  }
  return u;
}

std::vector<double> beauty_expected_utilities(const BeautyContestSpec& spec, AgentId i,
                                              const BeliefProfile& nu, const StateBelief& mu) {
  const auto [state_mean, state_var] = scalar_moments(mu);
  double mean_sum = 0.0;
  double var_sum = 0.0;
  for (AgentId j = 0; j < spec.n; ++j) {
    if (j == i) continue;
    const Strategy& s = nu.about(j);
    const double m1 = s.expect(spec.grid);
    double m2 = 0.0;
    for (std::size_t k = 0; k < spec.grid.size(); ++k) m2 += s[k] * (spec.grid[k] - m1) * (spec.grid[k] - m1);
    mean_sum += m1;
    var_sum += m2;
  }
  const double others = static_cast<double>(spec.n - 1);
  const double others_mean = mean_sum / others;
  const double others_var = var_sum / (others * others);
  std::vector<double> values(spec.grid.size());
  for (std::size_t k = 0; k < spec.grid.size(); ++k) {
    const double x = spec.grid[k];
    const double est = (x - state_mean) * (x - state_mean) + state_var;
    const double coord = (x - others_mean) * (x - others_mean) + others_var;
    values[k] = -spec.lambda * est - (1.0 - spec.lambda) * coord;
  }
  return values;
}

double beauty_expected_utility(const BeautyContestSpec& spec, AgentId i, ActionId a_i,
                               const BeliefProfile& nu, const StateBelief& mu) {
  action_value(spec.grid, a_i);
  return beauty_expected_utilities(spec, i, nu, mu)[a_i.offset()];
}

GameSpec make_beauty_game(const BeautyContestSpec& spec) {
  validate(spec);
  GameSpec game;
  game.name = "beauty";
  game.n = spec.n;
  game.m = static_cast<int>(spec.grid.size());
  game.symmetric = true;
  game.gaussian = GaussianIntegration::kSigmaPoints;  // exact for the quadratic loss
  game.action_values = spec.grid;
  game.utility = [spec](AgentId i, std::span<const ActionId> a, const WorldState& theta) {
    const double others = static_cast<double>(spec.n - 1);
    double total = 0.0;
    for (ActionId x : a) total += action_value(spec.grid, x);
    const double xi = action_value(spec.grid, a[static_cast<std::size_t>(i)]);
    const double est = xi - theta(0);
    const double coord = xi - (total - xi) / others;
    return -spec.lambda * est * est - (1.0 - spec.lambda) * coord * coord;
  };
  game.closed_form = [spec](AgentId i, const BeliefProfile& nu, const StateBelief& mu) {
    return beauty_expected_utilities(spec, i, nu, mu);
  };
  const double lo = spec.grid.front();
  const double hi = spec.grid.back();
  game.sample_state = [lo, hi](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> d(std::min(lo, hi), std::max(lo, hi) + 1e-12);
    WorldState s(1);
    s(0) = d(rng);
    return s;
  };
  return game;
}

// ---- target covering --------------------------------------------------------

TargetCoverSpec TargetCoverSpec::reference_instance() {
  TargetCoverSpec spec;
  spec.targets = {{-1, -1}, {1, 1}, {-1, 1}, {1, -1}, {0, 1}};
  spec.robots = {{-0.1, -0.1}, {0.1, 0.1}, {-0.1, 0.1}, {0.1, -0.1}, {0, 0.1}};
  return spec;
}

void validate(const TargetCoverSpec& spec) {
  if (spec.robots.size() < 2) throw DomainError("target covering needs at least two robots");
  if (spec.targets.size() != spec.robots.size()) throw DomainError("target covering needs one target per robot");
  for (const auto& p : spec.targets) {
    if (!p.allFinite()) throw DomainError("target position is not finite");
  }
  for (const auto& p : spec.robots) {
    if (!p.allFinite()) throw DomainError("robot position is not finite");
  }
  if (!(spec.obs_std > 0.0)) throw DomainError("obs_std must be positive");
  if (!(spec.capture_radius > 0.0)) throw DomainError("capture_radius must be positive");
  if (!(spec.step > 0.0)) throw DomainError("step must be positive");
}

double cover_reward(const Eigen::Vector2d& x, const Eigen::Vector2d& target) {
  return 1.0 / (x - target).squaredNorm();
}

Eigen::VectorXd stack_positions(const Positions& p) {
  Eigen::VectorXd theta(2 * static_cast<Eigen::Index>(p.size()));
  for (std::size_t k = 0; k < p.size(); ++k) theta.segment<2>(2 * static_cast<Eigen::Index>(k)) = p[k];
  return theta;
}

Positions unstack_positions(const Eigen::VectorXd& theta) {
  if (theta.size() % 2 != 0) throw DomainError("stacked positions must have even length");
  Positions p(static_cast<std::size_t>(theta.size() / 2));
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = theta.segment<2>(2 * static_cast<Eigen::Index>(k));
  return p;
}

std::vector<double> cover_payoff(const TargetCoverSpec& spec, std::span<const ActionId> a,
                                 const Eigen::VectorXd& theta) {
  const int n = spec.n();
  if (static_cast<int>(a.size()) != n) throw DomainError("joint action has the wrong length");
  if (theta.size() != 2 * n) throw DomainError("target state has the wrong dimension");
  std::vector<int> count(static_cast<std::size_t>(n), 0);
  for (ActionId x : a) {
    if (x.value < 1 || x.value > n) throw DomainError("target index outside 1..n");
    ++count[x.offset()];
  }
  std::vector<double> u(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (count[a[i].offset()] == 1) {
      u[i] = cover_reward(spec.robots[i], theta.segment<2>(2 * static_cast<Eigen::Index>(a[i].offset())));
    }
  }
  return u;
}

double cover_global_objective(const TargetCoverSpec& spec, std::span<const ActionId> a,
                              const Eigen::VectorXd& theta) {
  double total = 0.0;
  for (double u : cover_payoff(spec, a, theta)) total += u;
  return total;
}

std::vector<double> cover_expected_utilities(const TargetCoverSpec& spec, AgentId i,
                                             const BeliefProfile& nu, const StateBelief& mu) {
  const int n = spec.n();
  if (state_dimension(mu) != 2 * n) throw DomainError("target belief has the wrong dimension");
  const Eigen::Vector2d x = spec.robots[static_cast<std::size_t>(i)];
  std::vector<double> values(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    double vacancy = 1.0;
    for (AgentId j = 0; j < n; ++j) {
      if (j != i) vacancy *= 1.0 - nu.about(j)[static_cast<std::size_t>(k)];
    }
    double reward = 0.0;
    if (const auto* g = std::get_if<GaussianBelief>(&mu)) {
      reward = cover_reward(x, g->mean.segment<2>(2 * k));
    } else {
      const auto& c = std::get<CategoricalBelief>(mu);
      for (std::size_t s = 0; s < c.grid.size(); ++s) reward += c.probs[s] * cover_reward(x, c.grid[s].segment<2>(2 * k));
    }
    values[static_cast<std::size_t>(k)] = vacancy * reward;
  }
  return values;
}

double cover_expected_utility(const TargetCoverSpec& spec, AgentId i, ActionId k,
                              const BeliefProfile& nu, const StateBelief& mu) {
  if (k.value < 1 || k.value > spec.n()) throw DomainError("target index outside 1..n");
  return cover_expected_utilities(spec, i, nu, mu)[k.offset()];
}

GameSpec make_cover_game(const TargetCoverSpec& spec) {
  validate(spec);
  GameSpec game;
  game.name = "cover";
  game.n = spec.n();
  game.m = spec.n();
  game.gaussian = GaussianIntegration::kPlugInMean;
  game.symmetric = true;
  for (std::size_t k = 1; k < spec.robots.size(); ++k) {
    if (spec.robots[k] != spec.robots.front()) game.symmetric = false;
  }
  for (int k = 1; k <= game.m; ++k) game.action_values.push_back(k);
  game.utility = [spec](AgentId i, std::span<const ActionId> a, const WorldState& theta) {
    const ActionId own = a[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (static_cast<AgentId>(j) != i && a[j] == own) return 0.0;
    }
    return cover_reward(spec.robots[static_cast<std::size_t>(i)], theta.segment<2>(2 * static_cast<Eigen::Index>(own.offset())));
  };
  game.closed_form = [spec](AgentId i, const BeliefProfile& nu, const StateBelief& mu) {
    return cover_expected_utilities(spec, i, nu, mu);
  };
  const int n = spec.n();
  game.sample_state = [n](std::mt19937_64& rng) {
    std::uniform_real_distribution<double> d(-1.5, 1.5);
    WorldState s(2 * n);
    for (Eigen::Index k = 0; k < s.size(); ++k) s(k) = d(rng);
    return s;
  };
  return game;
}

Positions integrate_positions(const TargetCoverSpec& spec, const Positions& positions,
                              std::span<const ActionId> chosen, std::span<const Positions> believed_targets) {
  if (positions.size() != chosen.size() || positions.size() != believed_targets.size()) {
    throw DomainError("one position, choice and belief per robot required");
  }
  if (!(spec.step > 0.0)) throw DomainError("step must be positive");
  Positions next = positions;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const auto& believed = believed_targets[i];
    if (chosen[i].value < 1 || chosen[i].offset() >= believed.size()) throw DomainError("target index out of range");
    const Eigen::Vector2d delta = believed[chosen[i].offset()] - positions[i];
    const double dist = delta.norm();
    if (dist <= spec.step) {
      next[i] = believed[chosen[i].offset()];
    } else {
      next[i] = positions[i] + (spec.step / dist) * delta;
    }
  }
  return next;
}

bool all_targets_covered(const TargetCoverSpec& spec, const Positions& positions) {
  for (const auto& target : spec.targets) {
    int inside = 0;
    for (const auto& p : positions) {
      if ((p - target).norm() <= spec.capture_radius) ++inside;
    }
    if (inside != 1) return false;
  }
  return true;
}

// ---- structural checks ------------------------------------------------------

bool check_symmetry(const GameSpec& game, int samples, std::mt19937_64& rng) {
  if (game.n < 2) return true;
  for (int s = 0; s < samples; ++s) {
    const WorldState theta = sample_state(game, rng);
    auto a = random_profile(game, rng);
    const auto [i, j] = random_pair(game.n, rng);
    const double ui = checked_utility(game, i, a, theta);
    std::swap(a[static_cast<std::size_t>(i)], a[static_cast<std::size_t>(j)]);
    const double uj = checked_utility(game, j, a, theta);
    if (std::abs(ui - uj) > kStructureTolerance) return false;
  }
  return true;
}

double potential_cycle_sum(const GameSpec& game, std::span<const ActionId> a, AgentId i, AgentId j,
                           ActionId ai_dev, ActionId aj_dev, const WorldState& theta) {
  std::vector<ActionId> p(a.begin(), a.end());
  const auto ui = static_cast<std::size_t>(i);
  const auto uj = static_cast<std::size_t>(j);
  const ActionId ai = p[ui];
  const ActionId aj = p[uj];
  auto u = [&](AgentId who, ActionId x, ActionId y) {
    p[ui] = x;
    p[uj] = y;
    return checked_utility(game, who, p, theta);
  };
  return (u(i, ai_dev, aj) - u(i, ai, aj)) + (u(j, ai_dev, aj_dev) - u(j, ai_dev, aj)) +
         (u(i, ai, aj_dev) - u(i, ai_dev, aj_dev)) + (u(j, ai, aj) - u(j, ai, aj_dev));
}

bool check_potential_cycle(const GameSpec& game, int samples, std::mt19937_64& rng) {
  if (game.n < 2) return true;
  std::uniform_int_distribution<int> action(1, game.m);
  for (int s = 0; s < samples; ++s) {
    const WorldState theta = sample_state(game, rng);
    const auto a = random_profile(game, rng);
    const auto [i, j] = random_pair(game.n, rng);
    const ActionId ai_dev{action(rng)};
    const ActionId aj_dev{action(rng)};
    if (std::abs(potential_cycle_sum(game, a, i, j, ai_dev, aj_dev, theta)) > kStructureTolerance) return false;
  }
  return true;
}

}  // namespace netfp
