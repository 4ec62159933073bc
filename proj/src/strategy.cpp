#include "netfp/strategy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "netfp/errors.hpp"

namespace netfp {

Strategy::Strategy(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw DomainError("strategy over zero actions");
  double total = 0.0;
  for (double p : probs_) {
    if (!std::isfinite(p) || p < -kSimplexTolerance) {
      std::ostringstream os;
      os << "strategy entry " << p << " is not a probability";
      throw DomainError(os.str());
    }
    total += p;
  }
  if (std::abs(total - 1.0) > kSimplexTolerance) {
    std::ostringstream os;
    os << "strategy sums to " << total;
    throw DomainError(os.str());
  }
  for (double& p : probs_) p = std::max(p, 0.0);
}

Strategy Strategy::uniform(std::size_t m) {
  if (m == 0) throw DomainError("strategy over zero actions");
  return Strategy(std::vector<double>(m, 1.0 / static_cast<double>(m)));
}

double Strategy::expect(std::span<const double> values) const {
  if (values.size() != probs_.size()) throw DomainError("expectation over mismatched action count");
  double acc = 0.0;
  for (std::size_t k = 0; k < probs_.size(); ++k) acc += probs_[k] * values[k];
  return acc;
}

Strategy indicator(ActionId a, std::size_t m) {
  if (a.value < 1 || static_cast<std::size_t>(a.value) > m) {
    std::ostringstream os;
    os << "action " << a.value << " outside 1.." << m;
    throw DomainError(os.str());
  }
  std::vector<double> probs(m, 0.0);
  probs[a.offset()] = 1.0;
  return Strategy(std::move(probs));
}

double l2_distance(const Strategy& a, const Strategy& b) {
  if (a.size() != b.size()) throw DomainError("distance between strategies of different length");
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    acc += d * d;
  }
  return std::sqrt(acc);
}

BeliefProfile::BeliefProfile(AgentId owner, std::vector<Strategy> others)
    : owner_(owner), others_(std::move(others)) {
  if (owner_ < 0 || owner_ > static_cast<AgentId>(others_.size())) {
    throw DomainError("belief profile owner out of range");
  }
  for (const auto& s : others_) {
    if (s.size() != others_.front().size()) throw DomainError("belief profile mixes action counts");
  }
}

BeliefProfile BeliefProfile::from_full(AgentId owner, std::span<const Strategy> all) {
  if (owner < 0 || owner >= static_cast<AgentId>(all.size())) {
    throw DomainError("belief profile owner out of range");
  }
  std::vector<Strategy> others;
  others.reserve(all.size() - 1);
  for (std::size_t j = 0; j < all.size(); ++j) {
    if (static_cast<AgentId>(j) != owner) others.push_back(all[j]);
  }
  return BeliefProfile(owner, std::move(others));
}

BeliefProfile BeliefProfile::identical(AgentId owner, int n, const Strategy& s) {
  if (n < 1) throw DomainError("belief profile needs at least one agent");
  return BeliefProfile(owner, std::vector<Strategy>(static_cast<std::size_t>(n - 1), s));
}

const Strategy& BeliefProfile::about(AgentId j) const {
  if (j == owner_ || j < 0 || j > static_cast<AgentId>(others_.size())) {
    throw DomainError("belief profile queried about its owner or an unknown agent");
  }
  return others_[static_cast<std::size_t>(j < owner_ ? j : j - 1)];
}

}  // namespace netfp
