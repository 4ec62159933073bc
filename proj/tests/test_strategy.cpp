#include <doctest.h>

#include <cmath>
#include <vector>

#include "netfp/errors.hpp"
#include "netfp/strategy.hpp"

using namespace netfp;

TEST_CASE("indicator puts unit mass on the action") {
  CHECK(indicator(ActionId{2}, 4) == Strategy({0, 1, 0, 0}));
  CHECK(indicator(ActionId{1}, 1) == Strategy({1}));
  CHECK_THROWS_AS(indicator(ActionId{5}, 4), DomainError);
  CHECK_THROWS_AS(indicator(ActionId{0}, 4), DomainError);
}

TEST_CASE("strategy rejects vectors off the simplex") {
  CHECK_THROWS_AS(Strategy({0.5, 0.6}), DomainError);
  CHECK_THROWS_AS(Strategy({1.2, -0.2}), DomainError);
  CHECK_THROWS_AS(Strategy(std::vector<double>{}), DomainError);
  CHECK_NOTHROW(Strategy({0.5, 0.5 + 1e-10}));
  // tiny negative rounding is clamped to zero
  const Strategy s({1.0 + 5e-10, -5e-10});
  CHECK(s[1] == 0.0);
}

TEST_CASE("uniform, expectation and distance") {
  const Strategy u = Strategy::uniform(4);
  for (std::size_t k = 0; k < 4; ++k) CHECK(u[k] == doctest::Approx(0.25));
  const std::vector<double> values = {1, 2, 3, 4};
  CHECK(u.expect(values) == doctest::Approx(2.5));
  CHECK(l2_distance(indicator(ActionId{1}, 2), indicator(ActionId{2}, 2)) == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(l2_distance(Strategy::uniform(2), Strategy::uniform(3)), DomainError);
}

TEST_CASE("action ids are 1-based with 0-based offsets") {
  CHECK(ActionId{3}.offset() == 2);
  CHECK(ActionId::from_offset(0) == ActionId{1});
  CHECK(ActionId{1} < ActionId{2});
}

TEST_CASE("belief profile skips the owner") {
  const std::vector<Strategy> all = {indicator(ActionId{1}, 3), indicator(ActionId{2}, 3), indicator(ActionId{3}, 3)};
  const BeliefProfile p = BeliefProfile::from_full(1, all);
  CHECK(p.owner() == 1);
  CHECK(p.agent_count() == 3);
  CHECK(p.action_count() == 3);
  CHECK(p.about(0) == all[0]);
  CHECK(p.about(2) == all[2]);
  CHECK_THROWS_AS(p.about(1), DomainError);
  CHECK_THROWS_AS(BeliefProfile::from_full(3, all), DomainError);

  const BeliefProfile same = BeliefProfile::identical(0, 4, Strategy::uniform(2));
  CHECK(same.agent_count() == 4);
  CHECK(same.about(3) == Strategy::uniform(2));
}
