#pragma once

#include <Eigen/Dense>
#include <random>
#include <span>
#include <vector>

#include "netfp/game.hpp"
#include "netfp/graph.hpp"

namespace netfp {

// ---- beauty contest ---------------------------------------------------------
//
//   u_i(a, theta) = -lambda (x_i - theta)^2 - (1 - lambda)(x_i - mean_{j != i} x_j)^2
//
// with x_i the physical value (degrees) of agent i's action.

struct BeautyContestSpec {
  int n = 2;
  double lambda = 0.5;
  std::vector<double> grid;  // action values; default 0, 5, ..., 180
  double theta = 90.0;       // true direction
  double signal_std = 20.0;
  double nominal_variance = 400.0;  // variance attached to point estimates

  static std::vector<double> default_grid();  // 37 values
};

// Throws DomainError for n < 2, lambda outside [0, 1] or an empty grid.
void validate(const BeautyContestSpec& spec);

std::vector<double> beauty_payoff(const BeautyContestSpec& spec, std::span<const ActionId> a, double theta);

// Exact expectation under independent beliefs on the others and any 1-D state
// belief: only the first two moments of each distribution enter.
std::vector<double> beauty_expected_utilities(const BeautyContestSpec& spec, AgentId i,
                                              const BeliefProfile& nu, const StateBelief& mu);
double beauty_expected_utility(const BeautyContestSpec& spec, AgentId i, ActionId a_i,
                               const BeliefProfile& nu, const StateBelief& mu);

GameSpec make_beauty_game(const BeautyContestSpec& spec);

// ---- target covering --------------------------------------------------------
//
//   u_i(a, theta) = 1{no j != i picks a_i} h(x_i, theta_{a_i}),  h(x, y) = |x - y|^-2
//
// theta stacks the target positions as (x_1, y_1, ..., x_n, y_n).

struct TargetCoverSpec {
  Positions targets;  // true positions
  Positions robots;   // initial positions x_i; h stays anchored here
  double obs_std = 0.2;
  double capture_radius = 0.05;
  double step = 0.02;

  int n() const { return static_cast<int>(robots.size()); }
  // The five-robot instance: targets (-1,-1) (1,1) (-1,1) (1,-1) (0,1),
  // robots at (-0.1,-0.1) (0.1,0.1) (-0.1,0.1) (0.1,-0.1) (0,0.1).
  static TargetCoverSpec reference_instance();
};

void validate(const TargetCoverSpec& spec);

double cover_reward(const Eigen::Vector2d& x, const Eigen::Vector2d& target);
Eigen::VectorXd stack_positions(const Positions& p);
Positions unstack_positions(const Eigen::VectorXd& theta);

std::vector<double> cover_payoff(const TargetCoverSpec& spec, std::span<const ActionId> a,
                                 const Eigen::VectorXd& theta);
// Sum of all agents' utilities.
double cover_global_objective(const TargetCoverSpec& spec, std::span<const ActionId> a,
                              const Eigen::VectorXd& theta);

// Vacancy probability under independent beliefs times the reward at the
// believed target position (mean for Gaussian beliefs, exact expectation for
// categorical ones).
std::vector<double> cover_expected_utilities(const TargetCoverSpec& spec, AgentId i,
                                             const BeliefProfile& nu, const StateBelief& mu);
double cover_expected_utility(const TargetCoverSpec& spec, AgentId i, ActionId k,
                              const BeliefProfile& nu, const StateBelief& mu);

GameSpec make_cover_game(const TargetCoverSpec& spec);

// Each robot moves `step` (or less, without overshooting) straight toward the
// believed position of its chosen target.
Positions integrate_positions(const TargetCoverSpec& spec, const Positions& positions,
                              std::span<const ActionId> chosen, std::span<const Positions> believed_targets);

// Every target has exactly one robot within the capture radius.
bool all_targets_covered(const TargetCoverSpec& spec, const Positions& positions);

// ---- structural checks ------------------------------------------------------

// Swap test u_i(.., a_i, .., a_j, ..) == u_j(.., a_j, .., a_i, ..) within 1e-9 on
// random profiles and states.
bool check_symmetry(const GameSpec& game, int samples, std::mt19937_64& rng);

// Four-cycle test: the sum of the deviators' utility changes around
// (a_i, a_j) -> (a_i', a_j) -> (a_i', a_j') -> (a_i, a_j') -> (a_i, a_j)
// vanishes within 1e-9 for an exact potential game.
bool check_potential_cycle(const GameSpec& game, int samples, std::mt19937_64& rng);

// The cycle sum for one explicit instance.
double potential_cycle_sum(const GameSpec& game, std::span<const ActionId> a, AgentId i, AgentId j,
                           ActionId ai_dev, ActionId aj_dev, const WorldState& theta);

}  // namespace netfp
