#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "netfp/belief.hpp"
#include "netfp/strategy.hpp"

namespace netfp {

// How a game without an exact closed form integrates utilities over a
// Gaussian state belief.
enum class GaussianIntegration {
  kPlugInMean,   // evaluate at the belief mean
  kSigmaPoints,  // 2d symmetric sigma points; exact for polynomials of degree <= 3
};

using UtilityFn = std::function<double(AgentId, std::span<const ActionId>, const WorldState&)>;
// Expected utility of every own action (length m) for agent i under beliefs
// on the others' play and on the state.
using ClosedFormFn =
    std::function<std::vector<double>(AgentId, const BeliefProfile&, const StateBelief&)>;
using StateSampler = std::function<WorldState(std::mt19937_64&)>;

struct GameSpec {
  std::string name;
  int n = 0;
  int m = 0;
  UtilityFn utility;
  ClosedFormFn closed_form;  // optional
  bool symmetric = false;
  GaussianIntegration gaussian = GaussianIntegration::kPlugInMean;
  // Physical value of each action (degrees, target id, ...), length m.
  std::vector<double> action_values;
  // Draws states for the structural checks; optional.
  StateSampler sample_state;
};

// Evaluates game.utility and rejects non-finite values.
double checked_utility(const GameSpec& game, AgentId i, std::span<const ActionId> joint,
                       const WorldState& theta);

// Weighted support points used to integrate over `belief`.
struct QuadratureNode {
  WorldState state;
  double weight;
};
std::vector<QuadratureNode> quadrature(const StateBelief& belief, GaussianIntegration mode);

// Sum over all m^n joint actions of u_i(a, theta) * prod_j sigma_j(a_j).
double mixed_expected_utility(const GameSpec& game, AgentId i, std::span<const Strategy> sigma,
                              const WorldState& theta);

// u_i(a; mu) for a pure joint action.
double expected_payoff(const GameSpec& game, AgentId i, std::span<const ActionId> joint,
                       const StateBelief& mu);

// Expected utility of each own action against beliefs `nu` and state belief
// `mu`. Uses the closed form when the game declares one.
std::vector<double> action_utilities(const GameSpec& game, AgentId i, const BeliefProfile& nu,
                                     const StateBelief& mu);

// The same quantity by enumeration of the others' joint actions, ignoring any
// closed form.
std::vector<double> enumerated_action_utilities(const GameSpec& game, AgentId i,
                                                const BeliefProfile& nu, const StateBelief& mu);

double expected_utility_under_beliefs(const GameSpec& game, AgentId i, ActionId a_i,
                                      const BeliefProfile& nu, const StateBelief& mu);

// Relative tolerance under which two expected utilities are tied.
inline constexpr double kTieTolerance = 1e-12;

// First index within kTieTolerance * max(1, |max|) of the maximum.
ActionId argmax_lowest(std::span<const double> values);

ActionId best_response(const GameSpec& game, AgentId i, const BeliefProfile& nu,
                       const StateBelief& mu);
double best_response_value(const GameSpec& game, AgentId i, const BeliefProfile& nu,
                           const StateBelief& mu);

}  // namespace netfp
