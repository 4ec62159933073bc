#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "netfp/engine.hpp"
#include "netfp/game.hpp"

namespace netfp {

using StrategyProfile = std::vector<Strategy>;
using PureProfile = std::vector<ActionId>;

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

// u_i(sigma; mu): agent i's expected utility when everybody follows `profile`.
double profile_utility(const GameSpec& game, AgentId i, const StrategyProfile& profile, const StateBelief& mu);

// max over pure deviations of agent i minus u_i(profile; mu); >= 0 up to rounding.
double deviation_gain(const GameSpec& game, AgentId i, const StrategyProfile& profile, const StateBelief& mu);

// Every pure profile with no profitable unilateral deviation (gain <= 1e-9),
// in lexicographic order. Throws ResourceError when m^n exceeds cap.
std::vector<PureProfile> pure_nash_set(const GameSpec& game, const StateBelief& mu,
                                       std::uint64_t cap = kDefaultEnumerationCap);

// No agent gains more than eps by a pure deviation; with consensus = true all
// entries must also coincide within 1e-9. Throws DomainError for eps < 0.
bool epsilon_nash_check(const GameSpec& game, const StrategyProfile& profile, const StateBelief& mu, double eps,
                        bool consensus);

struct ConsensusSearch {
  double resolution = 0.02;  // simplex grid spacing
  std::uint64_t cap = kDefaultEnumerationCap;
  // Skip the grid and start the refinement from the pure consensus profiles
  // only; needed for large m.
  bool pure_only = false;
  int refine_candidates = 8;
  int refine_sweeps = 40;
  double member_tolerance = 1e-6;  // accepted deviation gain after refinement
};

struct ConsensusSet {
  std::vector<Strategy> members;  // the common strategy g of each consensus profile
  double resolution = 0.0;
  bool grid_searched = false;
};

// Approximates C(mu): consensus profiles (g, ..., g) whose largest deviation
// gain is within member_tolerance. Throws ResourceError if the grid exceeds the
// cap.
ConsensusSet consensus_equilibria(const GameSpec& game, const StateBelief& mu, const ConsensusSearch& search = {});

// min over g in the set of the stacked Euclidean distance between profile and
// (g, ..., g). Throws DomainError for an empty set.
double consensus_distance(const StrategyProfile& profile, const ConsensusSet& set);
double consensus_distance(const StrategyProfile& profile, const GameSpec& game, const StateBelief& mu,
                          const ConsensusSearch& search = {});

// Stacked Euclidean distance from profile to the nearest pure Nash profile.
double pure_nash_distance(const StrategyProfile& profile, std::span<const PureProfile> nash);

struct BetaSeries {
  std::vector<double> beta;    // beta_t
  std::vector<double> cesaro;  // (1/T) sum_{t <= T} beta_t
};

// beta_t = sum_i [ max_a u_i(a, f_-i; mu) - u_i(f_i, f_-i; mu) ] on the recorded
// histograms f_{i,t+1}. Throws DomainError if the trajectory has no histograms.
BetaSeries beta_series(const GameSpec& game, const Trajectory& trajectory, const StateBelief& mu);
BetaSeries beta_series(const GameSpec& game, std::span<const StrategyProfile> histograms, const StateBelief& mu);

// Per-round maxima of |fhat^i - fbar| (action sharing) or |nu^i_j - f_j|
// (histogram sharing). Throws DomainError if the trajectory comes from the
// other variant.
std::vector<double> tracking_error_series(const Trajectory& trajectory, Variant expected);

// Expected utility of a_i by plain enumeration over the others' joint actions
// and the support of mu (Gaussians through the game's quadrature). Throws
// ResourceError when m^(n-1) times the support size exceeds cap.
double brute_force_expected_utility(const GameSpec& game, AgentId i, ActionId a_i, const BeliefProfile& nu,
                                    const StateBelief& mu, std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace netfp
