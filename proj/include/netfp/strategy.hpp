#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

namespace netfp {

// Agents are 0-based everywhere in the library; files and CLI output use
// 1-based ids.
using AgentId = int;

inline constexpr double kSimplexTolerance = 1e-9;

// Action label in 1..m.
struct ActionId {
  int value = 1;

  constexpr std::size_t offset() const { return static_cast<std::size_t>(value - 1); }
  static constexpr ActionId from_offset(std::size_t k) { return ActionId{static_cast<int>(k) + 1}; }

  friend constexpr auto operator<=>(const ActionId&, const ActionId&) = default;
};

// Probability vector over the m actions. Used for mixed strategies and for
// every empirical histogram.
class Strategy {
 public:
  Strategy() = default;
  // Throws DomainError unless probs is a probability vector within
  // kSimplexTolerance.
  explicit Strategy(std::vector<double> probs);

  static Strategy uniform(std::size_t m);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t k) const { return probs_[k]; }
  std::span<const double> probs() const { return probs_; }

  // Expectation of a per-action quantity.
  double expect(std::span<const double> values) const;

  friend bool operator==(const Strategy&, const Strategy&) = default;

 private:
  std::vector<double> probs_;
};

// Unit vector with mass on `a`.
Strategy indicator(ActionId a, std::size_t m);

double l2_distance(const Strategy& a, const Strategy& b);

// Beliefs one agent holds over the mixed strategies of every other agent.
class BeliefProfile {
 public:
  // `others` lists the n-1 beliefs in increasing agent order, skipping owner.
  BeliefProfile(AgentId owner, std::vector<Strategy> others);

  // Takes a length-n list and drops the owner's slot.
  static BeliefProfile from_full(AgentId owner, std::span<const Strategy> all);
  // Same belief about every other agent.
  static BeliefProfile identical(AgentId owner, int n, const Strategy& s);

  AgentId owner() const { return owner_; }
  int agent_count() const { return static_cast<int>(others_.size()) + 1; }
  std::size_t action_count() const { return others_.empty() ? 0 : others_.front().size(); }
  const Strategy& about(AgentId j) const;

 private:
  AgentId owner_;
  std::vector<Strategy> others_;
};

}  // namespace netfp
