#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netfp/belief.hpp"
#include "netfp/game.hpp"
#include "netfp/graph.hpp"
#include "netfp/state_learning.hpp"
#include "netfp/strategy.hpp"

namespace netfp {

enum class Variant {
  kActionSharing,     // best respond to a local estimate of the population histogram
  kHistogramSharing,  // keep one belief per agent, share it with neighbors
};

std::string_view to_string(Variant v);
Variant variant_from_string(std::string_view s);

// Empirical distribution together with the round it refers to. At t = 1 the
// distribution is a prior; the first update uses step 1/1 and erases it, so
// from t = 2 on it equals the plain average of the observed indicators.
struct Histogram {
  Strategy dist;
  int t = 1;
};

Histogram initial_histogram(std::size_t m);

// f <- f + (1/t)(indicator(a) - f), t <- t + 1.
Histogram update_own_histogram(const Histogram& f, ActionId a);
// fhat <- fhat + (1/t)(mean of neighbor indicators - fhat).
Histogram update_centroid_estimate(const Histogram& fhat, std::span<const ActionId> neighbor_actions);
// fbar <- fbar + (1/t)(mean of all indicators - fbar).
Histogram update_centroid_truth(const Histogram& fbar, std::span<const ActionId> joint_action);

// Mixing weights w^i_{jk}: how observer i weighs neighbor k's belief about a
// non-neighbor j.
class WeightTensor {
 public:
  explicit WeightTensor(int n);
  // 1/|N_i| on every neighbor, for every non-neighbor subject.
  static WeightTensor uniform_over_neighbors(const Graph& g);

  double operator()(int observer, int subject, int source) const { return w_[index(observer, subject, source)]; }
  void set(int observer, int subject, int source, double value) { w_[index(observer, subject, source)] = value; }
  int size() const { return n_; }

  // Positive only on k in N_i; rows sum to one for subjects outside N_i and i.
  // Throws DomainError otherwise.
  void validate(const Graph& g) const;

 private:
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * n_ + static_cast<std::size_t>(j)) * n_ + static_cast<std::size_t>(k);
  }
  int n_;
  std::vector<double> w_;
};

// nu[i][j]: agent i's belief about agent j. The diagonal holds i's own
// histogram.
using BeliefStore = std::vector<std::vector<Strategy>>;

// Neighbors take the freshly updated histograms; every other subject j gets
// sum_k w^i_{jk} nu_previous[k][j].
BeliefStore update_nonneighbor_beliefs(const BeliefStore& previous, std::span<const Histogram> own_next,
                                       const Graph& g, const WeightTensor& w);

struct EngineState {
  int t = 1;
  std::vector<StateBelief> beliefs;
  std::vector<Histogram> own;
  Histogram centroid;                // population histogram, never shown to agents
  std::vector<Histogram> estimates;  // action sharing
  BeliefStore nu;                    // histogram sharing
  std::vector<ActionId> last_actions;
};

struct BeliefSummary {
  bool gaussian = true;
  Eigen::VectorXd mean;
  std::vector<double> probs;  // categorical only
  double cov_trace = 0.0;
};

BeliefSummary summarize(const StateBelief& b);

inline constexpr double kNotApplicable = std::numeric_limits<double>::quiet_NaN();

struct RoundRecord {
  int round = 0;
  std::vector<ActionId> actions;
  std::vector<BeliefSummary> beliefs;  // mu_{i,t} used for this round's choice
  std::vector<double> tv_to_reference;
  std::vector<Strategy> histograms;    // f_{i,t+1}, when recorded
  double track_err_centroid = kNotApplicable;  // max_i |fhat^i - fbar| after the update
  double track_err_pairwise = kNotApplicable;  // max_{i,j} |nu^i_j - f_j| after the update
  Positions positions;                         // filled by movement hooks
};

struct Trajectory {
  Variant variant = Variant::kActionSharing;
  int agents = 0;
  int actions = 0;
  std::vector<RoundRecord> rounds;
  std::string termination;  // "horizon" or the name of the hook that stopped the run
  std::optional<int> converged_round;
};

struct EngineOptions {
  std::optional<WeightTensor> weights;  // histogram sharing; uniform over neighbors by default
  bool record_histograms = true;
};

// One instance runs one trajectory; rounds are synchronous.
class Engine {
 public:
  Engine(GameSpec game, Graph graph, Variant variant, std::shared_ptr<StateLearning> learning,
         EngineOptions options = {});

  // One round: state-belief update (t >= 2), best responses, exchange, and
  // the variant's recursions.
  RoundRecord step();

  const EngineState& state() const { return state_; }
  const GameSpec& game() const { return game_; }
  const Graph& graph() const { return graph_; }
  Variant variant() const { return variant_; }
  const StateBelief& reference() const { return reference_; }

 private:
  GameSpec game_;
  Graph graph_;
  Variant variant_;
  std::shared_ptr<StateLearning> learning_;
  EngineOptions options_;
  WeightTensor weights_;
  StateBelief reference_;
  EngineState state_;
};

// Runs after every round; may annotate the record and ask the run to stop.
class RoundHook {
 public:
  virtual ~RoundHook() = default;
  virtual bool after_round(const Engine& engine, RoundRecord& record) = 0;
  virtual std::string_view name() const = 0;
  // Round the stopping condition first held, if this hook detects convergence.
  virtual std::optional<int> converged_round() const { return std::nullopt; }
};

// All agents on one action for `window` consecutive rounds.
class ConsensusStop final : public RoundHook {
 public:
  explicit ConsensusStop(int window);
  bool after_round(const Engine& engine, RoundRecord& record) override;
  std::string_view name() const override { return "consensus"; }
  std::optional<int> converged_round() const override;

 private:
  int window_;
  int streak_ = 0;
  int streak_start_ = 0;
  std::optional<ActionId> current_;
};

// Throws ConfigError for horizon < 1.
Trajectory run(Engine& engine, int horizon, std::span<RoundHook* const> hooks = {});

}  // namespace netfp
