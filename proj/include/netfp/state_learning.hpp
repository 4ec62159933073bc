#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <random>
#include <span>
#include <vector>

#include "netfp/belief.hpp"
#include "netfp/graph.hpp"

namespace netfp {

// mu_i <- sum_j w_ij mu_j, pointwise for categorical beliefs and on means and
// covariances for Gaussian ones. weights must be row stochastic and supported
// on N_i plus the diagonal.
std::vector<StateBelief> averaging_step(std::span<const StateBelief> beliefs, const Graph& g,
                                        const Eigen::MatrixXd& weights);

// Conjugate update of a Gaussian prior with observation obs ~ N(theta, noise_cov).
GaussianBelief bayes_gaussian_update(const GaussianBelief& prior, const Eigen::VectorXd& obs,
                                     const Eigen::MatrixXd& noise_cov);

// Product of independent flat-prior Gaussian posteriors: precisions add.
GaussianBelief pool_gaussian_posteriors(std::span<const GaussianBelief> posteriors);

// Exact total variation for categorical beliefs, over the union of their
// supports. For Gaussians a proxy bound:
//   min(1, |dmean| / (sqrt(2 pi) s_min) + sum_d sqrt(2) H_d)
// where s_min = min_d max(s1_d, s2_d) over marginal standard deviations and
// H_d is the Hellinger distance between the zero-mean marginals.
double total_variation(const StateBelief& a, const StateBelief& b);

struct TvRateSeries {
  std::vector<double> max_tv;  // per step, max over agents
  std::vector<double> scaled;  // max_tv * t / log t (t >= 2), 0 at t = 1
  // The scaled series at some t beyond the first tenth of the run exceeds the
  // largest scaled value seen in that first tenth.
  bool bound_exceeded = false;
};
// trajectory[t] is the list of agent beliefs at step t + 1.
TvRateSeries tv_rate_series(std::span<const std::vector<StateBelief>> trajectory,
                            const StateBelief& reference);

// Observation model: obs = theta + N(0, diag(noise_std^2)).
class SignalModel {
 public:
  explicit SignalModel(Eigen::VectorXd noise_std);

  Eigen::VectorXd draw(const Eigen::VectorXd& theta, std::mt19937_64& rng) const;
  Eigen::MatrixXd noise_cov() const;
  const Eigen::VectorXd& noise_std() const { return noise_std_; }

 private:
  Eigen::VectorXd noise_std_;
};

// Per-agent state belief dynamics driven round by round by the engine.
class StateLearning {
 public:
  virtual ~StateLearning() = default;
  virtual std::vector<StateBelief> initial_beliefs() = 0;
  // Produces mu_{i,t} from mu_{i,t-1}; called for t >= 2.
  virtual std::vector<StateBelief> advance(std::span<const StateBelief> previous, int t) = 0;
  // The common belief the agents converge to, for diagnostics.
  virtual StateBelief limit_belief() const = 0;
};

// Beliefs fixed at their initial value.
class StaticLearning final : public StateLearning {
 public:
  explicit StaticLearning(std::vector<StateBelief> beliefs, StateBelief limit);
  std::vector<StateBelief> initial_beliefs() override { return beliefs_; }
  std::vector<StateBelief> advance(std::span<const StateBelief> previous, int t) override;
  StateBelief limit_belief() const override { return limit_; }

 private:
  std::vector<StateBelief> beliefs_;
  StateBelief limit_;
};

// Repeated averaging_step with fixed weights. With doubly stochastic weights
// the limit is the population average of the initial beliefs.
class AveragingLearning final : public StateLearning {
 public:
  AveragingLearning(std::vector<StateBelief> initial, Graph g, Eigen::MatrixXd weights);
  std::vector<StateBelief> initial_beliefs() override { return initial_; }
  std::vector<StateBelief> advance(std::span<const StateBelief> previous, int t) override;
  StateBelief limit_belief() const override;

 private:
  std::vector<StateBelief> initial_;
  Graph graph_;
  Eigen::MatrixXd weights_;
};

// Every agent observes theta through `signals` once per round and applies
// Bayes' rule, starting from a flat prior (first posterior = first signal).
class BayesianLearning final : public StateLearning {
 public:
  BayesianLearning(Eigen::VectorXd truth, SignalModel signals, int agents, std::uint64_t seed);
  std::vector<StateBelief> initial_beliefs() override;
  std::vector<StateBelief> advance(std::span<const StateBelief> previous, int t) override;
  // Point mass at the true state.
  StateBelief limit_belief() const override;

 private:
  Eigen::VectorXd truth_;
  SignalModel signals_;
  int agents_;
  std::mt19937_64 rng_;
};

}  // namespace netfp
