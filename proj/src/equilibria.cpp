#include "netfp/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "netfp/errors.hpp"

namespace netfp {

namespace {

constexpr double kGainTolerance = 1e-9;

// m^k, saturating at +inf in double arithmetic so caps can be checked safely.
double power(int m, int k) { return std::pow(static_cast<double>(m), static_cast<double>(k)); }

double max_of(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

StrategyProfile consensus_profile(const Strategy& g, int n) {
  return StrategyProfile(static_cast<std::size_t>(n), g);
}

}  // namespace

double profile_utility(const GameSpec& game, AgentId i, const StrategyProfile& profile, const StateBelief& mu) {
  if (static_cast<int>(profile.size()) != game.n) throw DomainError("profile has the wrong number of agents");
  const auto values = action_utilities(game, i, BeliefProfile::from_full(i, profile), mu);
  return profile[static_cast<std::size_t>(i)].expect(values);
}

double deviation_gain(const GameSpec& game, AgentId i, const StrategyProfile& profile, const StateBelief& mu) {
  if (static_cast<int>(profile.size()) != game.n) throw DomainError("profile has the wrong number of agents");
  const auto values = action_utilities(game, i, BeliefProfile::from_full(i, profile), mu);
  return max_of(values) - profile[static_cast<std::size_t>(i)].expect(values);
}

std::vector<PureProfile> pure_nash_set(const GameSpec& game, const StateBelief& mu, std::uint64_t cap) {
  if (power(game.m, game.n) > static_cast<double>(cap)) {
    throw ResourceError("pure Nash enumeration needs " + std::to_string(power(game.m, game.n)) +
                        " profiles, above the cap of " + std::to_string(cap));
  }
  const auto nodes = quadrature(mu, game.gaussian);
  const auto n = static_cast<std::size_t>(game.n);
  std::vector<PureProfile> out;
  PureProfile a(n, ActionId{1});
  std::vector<double> deviations(static_cast<std::size_t>(game.m));
  while (true) {
    bool stable = true;
    for (std::size_t i = 0; i < n && stable; ++i) {
      PureProfile b = a;
      for (int k = 1; k <= game.m; ++k) {
        b[i] = ActionId{k};
        double u = 0.0;
        for (const auto& node : nodes) u += node.weight * checked_utility(game, static_cast<AgentId>(i), b, node.state);
        deviations[static_cast<std::size_t>(k - 1)] = u;
      }
      const double best = max_of(deviations);
      const double current = deviations[a[i].offset()];
      if (best - current > kGainTolerance * std::max(1.0, std::abs(best))) stable = false;
    }
    if (stable) out.push_back(a);
    std::size_t pos = n;
    while (pos > 0) {
      --pos;
      if (a[pos].value < game.m) {
        ++a[pos].value;
        break;
      }
      a[pos] = ActionId{1};
      if (pos == 0) return out;
    }
  }
}

bool epsilon_nash_check(const GameSpec& game, const StrategyProfile& profile, const StateBelief& mu, double eps,
                        bool consensus) {
  if (!(eps >= 0.0)) throw DomainError("eps must be nonnegative");
  if (static_cast<int>(profile.size()) != game.n) throw DomainError("profile has the wrong number of agents");
  if (consensus) {
    for (const auto& s : profile) {
      for (std::size_t k = 0; k < s.size(); ++k) {
        if (std::abs(s[k] - profile.front()[k]) > 1e-9) return false;
      }
    }
  }
  for (AgentId i = 0; i < game.n; ++i) {
    if (deviation_gain(game, i, profile, mu) > eps + kGainTolerance) return false;
  }
  return true;
}

namespace {

double gap_of(const GameSpec& game, const std::vector<double>& g, const StateBelief& mu) {
  const StrategyProfile profile = consensus_profile(Strategy(g), game.n);
  const int agents = game.symmetric ? 1 : game.n;
  double worst = 0.0;
  for (AgentId i = 0; i < agents; ++i) worst = std::max(worst, deviation_gain(game, i, profile, mu));
  return worst;
}

// Moves mass between pairs of actions while that lowers the largest
// deviation gain, halving the step whenever a sweep finds nothing.
std::pair<std::vector<double>, double> refine(const GameSpec& game, std::vector<double> g, double gap,
                                              const StateBelief& mu, const ConsensusSearch& search) {
  double delta = search.resolution;
  const auto m = g.size();
  for (int sweep = 0; sweep < search.refine_sweeps && gap > search.member_tolerance; ++sweep) {
    bool improved = false;
    for (std::size_t from = 0; from < m; ++from) {
      for (std::size_t to = 0; to < m; ++to) {
        if (from == to || g[from] <= 0.0) continue;
        std::vector<double> trial = g;
        const double moved = std::min(delta, trial[from]);
        trial[from] -= moved;
        trial[to] += moved;
        const double trial_gap = gap_of(game, trial, mu);
        if (trial_gap < gap) {
          g = std::move(trial);
          gap = trial_gap;
          improved = true;
        }
      }
    }
    if (!improved) delta *= 0.5;
  }
  return {g, gap};
}

}  // namespace

ConsensusSet consensus_equilibria(const GameSpec& game, const StateBelief& mu, const ConsensusSearch& search) {
  if (!(search.resolution > 0.0 && search.resolution <= 1.0)) throw DomainError("resolution must lie in (0, 1]");
  const int m = game.m;
  ConsensusSet out;
  out.resolution = search.resolution;
  std::vector<std::pair<double, std::vector<double>>> scored;

  if (search.pure_only) {
    for (int k = 0; k < m; ++k) {
      std::vector<double> g(static_cast<std::size_t>(m), 0.0);
      g[static_cast<std::size_t>(k)] = 1.0;
      scored.emplace_back(gap_of(game, g, mu), std::move(g));
    }
  } else {
    const int steps = static_cast<int>(std::lround(1.0 / search.resolution));
    // Number of compositions of `steps` into m parts.
    double count = 1.0;
    for (int k = 1; k < m; ++k) count = count * (steps + k) / k;
    if (count > static_cast<double>(search.cap)) {
      throw ResourceError("consensus grid needs " + std::to_string(count) + " points, above the cap of " +
                          std::to_string(search.cap));
    }
    out.grid_searched = true;
    std::vector<double> g(static_cast<std::size_t>(m), 0.0);
    auto fill = [&](auto&& self, int k, int left) -> void {
      if (k == m - 1) {
        g[static_cast<std::size_t>(k)] = static_cast<double>(left) / steps;
        scored.emplace_back(gap_of(game, g, mu), g);
        return;
      }
      for (int units = left; units >= 0; --units) {
        g[static_cast<std::size_t>(k)] = static_cast<double>(units) / steps;
        self(self, k + 1, left - units);
      }
    };
    fill(fill, 0, steps);
  }

  std::vector<std::size_t> order(scored.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scored[a].first < scored[b].first; });
  int refined = 0;
  for (std::size_t idx : order) {
    auto& [gap, g] = scored[idx];
    if (gap <= search.member_tolerance) {
      out.members.emplace_back(g);
      continue;
    }
    if (refined >= search.refine_candidates) continue;
    ++refined;
    auto [g2, gap2] = refine(game, g, gap, mu, search);
    if (gap2 <= search.member_tolerance) out.members.emplace_back(std::move(g2));
  }
  return out;
}

double consensus_distance(const StrategyProfile& profile, const ConsensusSet& set) {
  if (set.members.empty()) throw DomainError("consensus set is empty");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& g : set.members) {
    double acc = 0.0;
    for (const auto& s : profile) {
      if (s.size() != g.size()) throw DomainError("profile and consensus set disagree on m");
      for (std::size_t k = 0; k < g.size(); ++k) acc += (s[k] - g[k]) * (s[k] - g[k]);
    }
    best = std::min(best, std::sqrt(acc));
  }
  return best;
}

double consensus_distance(const StrategyProfile& profile, const GameSpec& game, const StateBelief& mu,
                          const ConsensusSearch& search) {
  return consensus_distance(profile, consensus_equilibria(game, mu, search));
}

double pure_nash_distance(const StrategyProfile& profile, std::span<const PureProfile> nash) {
  if (nash.empty()) throw DomainError("pure Nash set is empty");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& a : nash) {
    if (a.size() != profile.size()) throw DomainError("profile and Nash set disagree on n");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t k = 0; k < profile[i].size(); ++k) {
        const double target = k == a[i].offset() ? 1.0 : 0.0;
        acc += (profile[i][k] - target) * (profile[i][k] - target);
      }
    }
    best = std::min(best, std::sqrt(acc));
  }
  return best;
}

BetaSeries beta_series(const GameSpec& game, std::span<const StrategyProfile> histograms, const StateBelief& mu) {
  BetaSeries out;
  double total = 0.0;
  for (const auto& f : histograms) {
    double beta = 0.0;
    for (AgentId i = 0; i < game.n; ++i) beta += deviation_gain(game, i, f, mu);
    total += beta;
    out.beta.push_back(beta);
    out.cesaro.push_back(total / static_cast<double>(out.beta.size()));
  }
  return out;
}

BetaSeries beta_series(const GameSpec& game, const Trajectory& trajectory, const StateBelief& mu) {
  std::vector<StrategyProfile> histograms;
  histograms.reserve(trajectory.rounds.size());
  for (const auto& r : trajectory.rounds) {
    if (static_cast<int>(r.histograms.size()) != game.n) throw DomainError("trajectory was recorded without histograms");
    histograms.push_back(r.histograms);
  }
  return beta_series(game, histograms, mu);
}

std::vector<double> tracking_error_series(const Trajectory& trajectory, Variant expected) {
  if (trajectory.variant != expected) {
    throw DomainError("trajectory comes from the " + std::string(to_string(trajectory.variant)) + " variant");
  }
  std::vector<double> out;
  out.reserve(trajectory.rounds.size());
  for (const auto& r : trajectory.rounds) {
    out.push_back(expected == Variant::kActionSharing ? r.track_err_centroid : r.track_err_pairwise);
  }
  return out;
}

double brute_force_expected_utility(const GameSpec& game, AgentId i, ActionId a_i, const BeliefProfile& nu,
                                    const StateBelief& mu, std::uint64_t cap) {
  if (a_i.value < 1 || a_i.value > game.m) throw DomainError("action outside 1..m");
  const auto nodes = quadrature(mu, game.gaussian);
  if (power(game.m, game.n - 1) * static_cast<double>(nodes.size()) > static_cast<double>(cap)) {
    throw ResourceError("brute-force expected utility exceeds the enumeration cap");
  }
  std::vector<AgentId> others;
  for (AgentId j = 0; j < game.n; ++j) {
    if (j != i) others.push_back(j);
  }
  PureProfile a(static_cast<std::size_t>(game.n), ActionId{1});
  a[static_cast<std::size_t>(i)] = a_i;
  double total = 0.0;
  while (true) {
    double p = 1.0;
    for (AgentId j : others) p *= nu.about(j)[a[static_cast<std::size_t>(j)].offset()];
    double u = 0.0;
    for (const auto& node : nodes) u += node.weight * checked_utility(game, i, a, node.state);
    total += p * u;
    std::size_t pos = others.size();
    bool done = true;
    while (pos > 0) {
      --pos;
      auto& x = a[static_cast<std::size_t>(others[pos])];
      if (x.value < game.m) {
        ++x.value;
        done = false;
        break;
      }
      x = ActionId{1};
    }
    if (done) return total;
  }
}

}  // namespace netfp
