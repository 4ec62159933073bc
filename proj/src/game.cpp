#include "netfp/game.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "netfp/errors.hpp"

namespace netfp {

namespace {

// Depth-first walk over joint actions of the agents with a belief, skipping
// `fixed` (whose slot the caller fills). Zero-probability branches are pruned.
template <typename Visit>
void enumerate_joint(int n, int m, AgentId fixed, const std::function<const Strategy&(AgentId)>& dist,
                     std::vector<ActionId>& joint, AgentId j, double weight, Visit&& visit) {
  if (j == n) {
    visit(weight);
    return;
  }
  if (j == fixed) {
    enumerate_joint(n, m, fixed, dist, joint, j + 1, weight, visit);
    return;
  }
  const Strategy& s = dist(j);
  for (int k = 0; k < m; ++k) {
    const double p = s[static_cast<std::size_t>(k)];
    if (p == 0.0) continue;
    joint[static_cast<std::size_t>(j)] = ActionId::from_offset(static_cast<std::size_t>(k));
    enumerate_joint(n, m, fixed, dist, joint, j + 1, weight * p, visit);
  }
}

void check_agent(const GameSpec& game, AgentId i) {
  if (i < 0 || i >= game.n) throw DomainError("agent index out of range");
}

void check_profile(const GameSpec& game, const BeliefProfile& nu, AgentId i) {
  if (nu.owner() != i) throw DomainError("belief profile is not owned by the evaluating agent");
  if (nu.agent_count() != game.n) throw DomainError("belief profile covers the wrong number of agents");
  if (game.n > 1 && nu.action_count() != static_cast<std::size_t>(game.m)) {
    throw DomainError("belief profile has the wrong action count");
  }
}

}  // namespace

double checked_utility(const GameSpec& game, AgentId i, std::span<const ActionId> joint,
                       const WorldState& theta) {
  const double u = game.utility(i, joint, theta);
  if (!std::isfinite(u)) {
    std::ostringstream os;
    os << "game '" << game.name << "' returned non-finite utility for agent " << i;
    throw DomainError(os.str());
  }
  return u;
}

std::vector<QuadratureNode> quadrature(const StateBelief& belief, GaussianIntegration mode) {
  std::vector<QuadratureNode> nodes;
  if (const auto* c = std::get_if<CategoricalBelief>(&belief)) {
    for (std::size_t k = 0; k < c->grid.size(); ++k) {
      if (c->probs[k] > 0.0) nodes.push_back({c->grid[k], c->probs[k]});
    }
    return nodes;
  }
  const auto& g = std::get<GaussianBelief>(belief);
  if (mode == GaussianIntegration::kPlugInMean) {
    nodes.push_back({g.mean, 1.0});
    return nodes;
  }
  const auto d = g.mean.size();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g.cov);
  const Eigen::VectorXd sqrt_vals = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const double spread = std::sqrt(static_cast<double>(d));
  const double w = 1.0 / (2.0 * static_cast<double>(d));
  for (Eigen::Index k = 0; k < d; ++k) {
    const Eigen::VectorXd offset = spread * sqrt_vals(k) * eig.eigenvectors().col(k);
    nodes.push_back({g.mean + offset, w});
    nodes.push_back({g.mean - offset, w});
  }
  return nodes;
}

double mixed_expected_utility(const GameSpec& game, AgentId i, std::span<const Strategy> sigma,
                              const WorldState& theta) {
  check_agent(game, i);
  if (static_cast<int>(sigma.size()) != game.n) throw DomainError("strategy profile has the wrong length");
  for (const auto& s : sigma) {
    if (static_cast<int>(s.size()) != game.m) throw DomainError("strategy has the wrong action count");
  }
  std::vector<ActionId> joint(static_cast<std::size_t>(game.n));
  const std::function<const Strategy&(AgentId)> dist = [&](AgentId j) -> const Strategy& {
    return sigma[static_cast<std::size_t>(j)];
  };
  double total = 0.0;
  enumerate_joint(game.n, game.m, -1, dist, joint, 0, 1.0,
                  [&](double w) { total += w * checked_utility(game, i, joint, theta); });
  return total;
}

double expected_payoff(const GameSpec& game, AgentId i, std::span<const ActionId> joint,
                       const StateBelief& mu) {
  double total = 0.0;
  for (const auto& node : quadrature(mu, game.gaussian)) {
    total += node.weight * checked_utility(game, i, joint, node.state);
  }
  return total;
}

std::vector<double> enumerated_action_utilities(const GameSpec& game, AgentId i,
                                                const BeliefProfile& nu, const StateBelief& mu) {
  check_agent(game, i);
  check_profile(game, nu, i);
  const auto nodes = quadrature(mu, game.gaussian);
  std::vector<ActionId> joint(static_cast<std::size_t>(game.n));
  const std::function<const Strategy&(AgentId)> dist = [&](AgentId j) -> const Strategy& {
    return nu.about(j);
  };
  std::vector<double> values(static_cast<std::size_t>(game.m), 0.0);
  for (int k = 0; k < game.m; ++k) {
    joint[static_cast<std::size_t>(i)] = ActionId::from_offset(static_cast<std::size_t>(k));
    double total = 0.0;
    enumerate_joint(game.n, game.m, i, dist, joint, 0, 1.0, [&](double w) {
      for (const auto& node : nodes) total += w * node.weight * checked_utility(game, i, joint, node.state);
    });
    values[static_cast<std::size_t>(k)] = total;
  }
  return values;
}

std::vector<double> action_utilities(const GameSpec& game, AgentId i, const BeliefProfile& nu,
                                     const StateBelief& mu) {
  if (!game.closed_form) return enumerated_action_utilities(game, i, nu, mu);
  check_agent(game, i);
  check_profile(game, nu, i);
  auto values = game.closed_form(i, nu, mu);
  if (static_cast<int>(values.size()) != game.m) throw DomainError("closed form returned the wrong length");
  for (double v : values) {
    if (!std::isfinite(v)) throw DomainError("closed form returned a non-finite utility");
  }
  return values;
}

double expected_utility_under_beliefs(const GameSpec& game, AgentId i, ActionId a_i,
                                      const BeliefProfile& nu, const StateBelief& mu) {
  if (a_i.value < 1 || a_i.value > game.m) throw DomainError("action outside the game's action set");
  return action_utilities(game, i, nu, mu)[a_i.offset()];
}

ActionId argmax_lowest(std::span<const double> values) {
  if (values.empty()) throw DomainError("argmax over an empty action set");
  const double top = *std::max_element(values.begin(), values.end());
  // Values that differ only by summation-order rounding count as tied.
  const double slack = kTieTolerance * std::max(1.0, std::abs(top));
  std::size_t k = 0;
  while (values[k] < top - slack) ++k;
  return ActionId::from_offset(k);
}

ActionId best_response(const GameSpec& game, AgentId i, const BeliefProfile& nu,
                       const StateBelief& mu) {
  return argmax_lowest(action_utilities(game, i, nu, mu));
}

double best_response_value(const GameSpec& game, AgentId i, const BeliefProfile& nu,
                           const StateBelief& mu) {
  const auto values = action_utilities(game, i, nu, mu);
  return values[argmax_lowest(values).offset()];
}

}  // namespace netfp
