#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "netfp/engine.hpp"
#include "netfp/equilibria.hpp"
#include "netfp/errors.hpp"
#include "netfp/games.hpp"

using namespace netfp;

namespace {

Eigen::VectorXd v1(double x) { return Eigen::VectorXd::Constant(1, x); }

GameSpec table_game(int n, int m, std::function<double(AgentId, std::span<const ActionId>)> u) {
  GameSpec g;
  g.name = "table";
  g.n = n;
  g.m = m;
  g.utility = [u](AgentId i, std::span<const ActionId> a, const WorldState&) { return u(i, a); };
  for (int k = 1; k <= m; ++k) g.action_values.push_back(k);
  return g;
}

GameSpec coordination() {
  return table_game(2, 2, [](AgentId, std::span<const ActionId> a) { return a[0] == a[1] ? 1.0 : 0.0; });
}

// Stability of a pure profile, checked directly against every deviation.
bool is_pure_nash(const GameSpec& g, const PureProfile& a, const WorldState& theta) {
  for (int i = 0; i < g.n; ++i) {
    PureProfile b = a;
    const double now = g.utility(i, a, theta);
    for (int k = 1; k <= g.m; ++k) {
      b[i] = ActionId{k};
      if (g.utility(i, b, theta) > now + 1e-9) return false;
    }
  }
  return true;
}

Strategy random_strategy(int m, std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(m);
  double s = 0.0;
  for (auto& x : p) s += (x = e(rng));
  for (auto& x : p) x /= s;
  return Strategy(p);
}

}  // namespace

TEST_CASE("pure Nash set of the coordination game") {
  const auto set = pure_nash_set(coordination(), dirac(v1(0)));
  REQUIRE(set.size() == 2);
  CHECK(set[0] == PureProfile{ActionId{1}, ActionId{1}});
  CHECK(set[1] == PureProfile{ActionId{2}, ActionId{2}});
}

TEST_CASE("a strictly dominant profile is the only equilibrium") {
  const GameSpec g = table_game(3, 3, [](AgentId i, std::span<const ActionId> a) {
    return (a[i].value == 2 ? 5.0 : 0.0) + 0.1 * a[(i + 1) % 3].value;
  });
  const auto set = pure_nash_set(g, dirac(v1(0)));
  REQUIRE(set.size() == 1);
  CHECK(set[0] == PureProfile(3, ActionId{2}));
}

TEST_CASE("pure Nash set of the covering instance") {
  const TargetCoverSpec ref = TargetCoverSpec::reference_instance();
  const GameSpec g = make_cover_game(ref);
  const Eigen::VectorXd theta = stack_positions(ref.targets);
  const auto set = pure_nash_set(g, dirac(theta));
  REQUIRE_FALSE(set.empty());
  for (const auto& a : set) CHECK(is_pure_nash(g, a, theta));

  // every other profile has a profitable deviation
  int stable = 0;
  PureProfile a(5, ActionId{1});
  for (int code = 0; code < 3125; ++code) {
    int c = code;
    for (int i = 4; i >= 0; --i) {
      a[i] = ActionId{c % 5 + 1};
      c /= 5;
    }
    if (is_pure_nash(g, a, theta)) ++stable;
  }
  CHECK(stable == static_cast<int>(set.size()));

  const PureProfile best = {ActionId{1}, ActionId{2}, ActionId{3}, ActionId{4}, ActionId{5}};
  CHECK(std::find(set.begin(), set.end(), best) != set.end());
  CHECK(std::is_sorted(set.begin(), set.end()));
}

TEST_CASE("enumeration caps") {
  BeautyContestSpec s;
  s.n = 6;
  s.grid = BeautyContestSpec::default_grid();
  CHECK_THROWS_AS(pure_nash_set(make_beauty_game(s), dirac(v1(90))), ResourceError);
  const BeliefProfile nu = BeliefProfile::identical(0, 6, Strategy::uniform(37));
  CHECK_THROWS_AS(brute_force_expected_utility(make_beauty_game(s), 0, ActionId{1}, nu, dirac(v1(90))), ResourceError);
  ConsensusSearch tight;
  tight.resolution = 0.02;
  CHECK_THROWS_AS(consensus_equilibria(make_beauty_game(s), dirac(v1(90)), tight), ResourceError);
}

TEST_CASE("epsilon Nash") {
  const GameSpec g = coordination();
  const StateBelief mu = dirac(v1(0));
  const StrategyProfile nash = {indicator(ActionId{2}, 2), indicator(ActionId{2}, 2)};
  CHECK(epsilon_nash_check(g, nash, mu, 0.0, true));
  const StrategyProfile mixed = {indicator(ActionId{1}, 2), indicator(ActionId{2}, 2)};
  CHECK_FALSE(epsilon_nash_check(g, mixed, mu, 0.5, false));
  CHECK(epsilon_nash_check(g, mixed, mu, 2.0, false));
  CHECK_FALSE(epsilon_nash_check(g, mixed, mu, 2.0, true));
  const StrategyProfile uniform = {Strategy::uniform(2), Strategy::uniform(2)};
  CHECK(deviation_gain(g, 0, uniform, mu) == doctest::Approx(0.0));
  CHECK(profile_utility(g, 0, uniform, mu) == doctest::Approx(0.5));
  CHECK(epsilon_nash_check(g, uniform, mu, 0.4, true));
  CHECK_THROWS_AS(epsilon_nash_check(g, uniform, mu, -0.1, true), DomainError);
}

TEST_CASE("consensus equilibria of the reduced beauty contest") {
  BeautyContestSpec s;
  s.n = 3;
  s.lambda = 0.5;
  s.grid = {0, 45, 90, 135, 180};
  const GameSpec g = make_beauty_game(s);
  const StateBelief mu = GaussianBelief{v1(100), Eigen::MatrixXd::Constant(1, 1, 400)};
  ConsensusSearch search;
  search.resolution = 0.05;
  const ConsensusSet set = consensus_equilibria(g, mu, search);
  REQUIRE_FALSE(set.members.empty());
  const Strategy at90 = indicator(ActionId{3}, 5);
  CHECK(std::find(set.members.begin(), set.members.end(), at90) != set.members.end());
  for (const auto& m : set.members) {
    CHECK(deviation_gain(g, 0, StrategyProfile(3, m), mu) <= search.member_tolerance);
  }

  const StrategyProfile uniform(3, Strategy::uniform(5));
  const double to_point = std::sqrt(3.0 * 4.0 / 5.0);
  CHECK(consensus_distance(uniform, ConsensusSet{{at90}, 0.05, false}) == doctest::Approx(to_point));
  CHECK(consensus_distance(uniform, set) <= to_point + 1e-12);
  CHECK(consensus_distance(StrategyProfile(3, at90), set) == doctest::Approx(0.0));
  CHECK_THROWS_AS(consensus_distance(uniform, ConsensusSet{}), DomainError);

  ConsensusSearch pure;
  pure.pure_only = true;
  const ConsensusSet p = consensus_equilibria(g, mu, pure);
  CHECK(std::find(p.members.begin(), p.members.end(), at90) != p.members.end());
  CHECK_FALSE(p.grid_searched);
}

TEST_CASE("distance to pure Nash profiles") {
  const std::vector<PureProfile> nash = {{ActionId{1}, ActionId{1}}, {ActionId{2}, ActionId{2}}};
  const StrategyProfile p = {Strategy({0.9, 0.1}), Strategy({0.8, 0.2})};
  const double expect = std::sqrt(0.01 + 0.01 + 0.04 + 0.04);
  CHECK(pure_nash_distance(p, nash) == doctest::Approx(expect));
}

TEST_CASE("beta vanishes on a frozen Nash consensus and is never negative") {
  BeautyContestSpec s;
  s.n = 4;
  s.grid = {0, 45, 90, 135, 180};
  const GameSpec g = make_beauty_game(s);
  const StateBelief mu = dirac(v1(90));
  const std::vector<StrategyProfile> frozen(20, StrategyProfile(4, indicator(ActionId{3}, 5)));
  const BetaSeries b = beta_series(g, frozen, mu);
  for (double x : b.beta) CHECK(x == doctest::Approx(0.0));

  std::mt19937_64 rng(51);
  std::vector<StrategyProfile> random;
  for (int t = 0; t < 50; ++t) {
    StrategyProfile p;
    for (int i = 0; i < 4; ++i) p.push_back(random_strategy(5, rng));
    random.push_back(p);
  }
  const BetaSeries r = beta_series(g, random, mu);
  double sum = 0.0;
  for (std::size_t t = 0; t < r.beta.size(); ++t) {
    CHECK(r.beta[t] >= -1e-9);
    double expect = 0.0;
    for (int i = 0; i < 4; ++i) expect += deviation_gain(g, i, random[t], mu);
    CHECK(r.beta[t] == doctest::Approx(expect));
    sum += r.beta[t];
    CHECK(r.cesaro[t] == doctest::Approx(sum / (t + 1)));
  }
}

TEST_CASE("tracking error on a complete graph equals the self-exclusion gap") {
  // With f-hat^i the average over the others, f-hat^i - f-bar = (f-bar - f_i) / (n - 1).
  const int n = 5;
  BeautyContestSpec s;
  s.n = n;
  s.lambda = 0.6;
  s.grid = {0, 45, 90, 135, 180};
  std::vector<StateBelief> beliefs;
  for (double m : {10.0, 50.0, 90.0, 130.0, 170.0}) beliefs.push_back(dirac(v1(m)));
  auto learning = std::make_shared<StaticLearning>(beliefs, dirac(v1(90)));
  Engine e(make_beauty_game(s), complete_graph(n), Variant::kActionSharing, learning);
  const Trajectory traj = run(e, 60);
  const auto series = tracking_error_series(traj, Variant::kActionSharing);
  REQUIRE(series.size() == 60);
  for (std::size_t t = 0; t < series.size(); ++t) {
    const auto& h = traj.rounds[t].histograms;
    std::vector<double> fbar(5, 0.0);
    for (const auto& f : h)
      for (int k = 0; k < 5; ++k) fbar[k] += f[k] / n;
    double expect = 0.0;
    for (const auto& f : h) {
      double acc = 0.0;
      for (int k = 0; k < 5; ++k) acc += (fbar[k] - f[k]) * (fbar[k] - f[k]);
      expect = std::max(expect, std::sqrt(acc) / (n - 1));
    }
    CHECK(series[t] == doctest::Approx(expect).epsilon(1e-12));
    CHECK(series[t] >= 0.0);
  }
  CHECK_THROWS_AS(tracking_error_series(traj, Variant::kHistogramSharing), DomainError);
}

TEST_CASE("brute force expected utility") {
  // n = 2: a single weighted sum over the other's actions and the grid states
  const GameSpec g = table_game(2, 3, [](AgentId i, std::span<const ActionId> a) {
    return i == 0 ? a[0].value * 10.0 + a[1].value : 0.0;
  });
  GameSpec h = g;
  h.utility = [](AgentId, std::span<const ActionId> a, const WorldState& s) { return a[0].value * s(0) + a[1].value; };
  const BeliefProfile nu = BeliefProfile::from_full(0, std::vector<Strategy>{Strategy::uniform(3), Strategy({0.2, 0.3, 0.5})});
  const StateBelief mu = CategoricalBelief{{v1(1.0), v1(3.0)}, {0.25, 0.75}};
  const double expect = 2 * (0.25 * 1 + 0.75 * 3) + (0.2 * 1 + 0.3 * 2 + 0.5 * 3);
  CHECK(brute_force_expected_utility(h, 0, ActionId{2}, nu, mu) == doctest::Approx(expect));

  // swapping two others with identical beliefs changes nothing
  BeautyContestSpec s;
  s.n = 4;
  s.grid = {0, 45, 90, 135, 180};
  const GameSpec b = make_beauty_game(s);
  std::mt19937_64 rng(52);
  const Strategy same = random_strategy(5, rng), other = random_strategy(5, rng);
  const BeliefProfile p1 = BeliefProfile::from_full(0, std::vector<Strategy>{Strategy::uniform(5), same, other, same});
  const BeliefProfile p2 = BeliefProfile::from_full(0, std::vector<Strategy>{Strategy::uniform(5), same, same, other});
  CHECK(brute_force_expected_utility(b, 0, ActionId{2}, p1, dirac(v1(70))) ==
        doctest::Approx(brute_force_expected_utility(b, 0, ActionId{2}, p2, dirac(v1(70)))));
}
