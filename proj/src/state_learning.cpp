#include "netfp/state_learning.hpp"

#include <cmath>
#include <numbers>

#include "netfp/errors.hpp"

namespace netfp {

namespace {

constexpr double kWeightTolerance = 1e-9;

void check_weights(const Graph& g, const Eigen::MatrixXd& w) {
  const int n = g.size();
  if (w.rows() != n || w.cols() != n) throw DomainError("averaging weights do not match the graph size");
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      const double x = w(i, j);
      if (x < -kWeightTolerance) throw DomainError("averaging weight is negative");
      if (x > kWeightTolerance && j != i && !g.has_edge(j, i)) {
        throw DomainError("averaging weight placed on a non-neighbor");
      }
      row += x;
    }
    if (std::abs(row - 1.0) > kWeightTolerance) throw DomainError("averaging weights are not row stochastic");
  }
}

}  // namespace

std::vector<StateBelief> averaging_step(std::span<const StateBelief> beliefs, const Graph& g,
                                        const Eigen::MatrixXd& weights) {
  if (static_cast<int>(beliefs.size()) != g.size()) throw DomainError("one belief per node required");
  check_weights(g, weights);
  const bool gaussian = is_gaussian(beliefs.front());
  for (const auto& b : beliefs) {
    if (is_gaussian(b) != gaussian) throw DomainError("averaging mixes belief representations");
  }
  const int n = g.size();
  std::vector<StateBelief> out;
  out.reserve(beliefs.size());
  for (int i = 0; i < n; ++i) {
    auto contributors = g.neighbors(i);
    contributors.push_back(i);
    if (gaussian) {
      const auto& self = std::get<GaussianBelief>(beliefs[static_cast<std::size_t>(i)]);
      GaussianBelief acc{Eigen::VectorXd::Zero(self.mean.size()), Eigen::MatrixXd::Zero(self.cov.rows(), self.cov.cols())};
      for (int j : contributors) {
        const auto& b = std::get<GaussianBelief>(beliefs[static_cast<std::size_t>(j)]);
        if (b.mean.size() != acc.mean.size()) throw DomainError("averaging mixes state dimensions");
        acc.mean += weights(i, j) * b.mean;
        acc.cov += weights(i, j) * b.cov;
      }
      out.emplace_back(std::move(acc));
    } else {
      const auto& self = std::get<CategoricalBelief>(beliefs[static_cast<std::size_t>(i)]);
      CategoricalBelief acc{self.grid, std::vector<double>(self.probs.size(), 0.0)};
      for (int j : contributors) {
        const auto& b = std::get<CategoricalBelief>(beliefs[static_cast<std::size_t>(j)]);
        if (b.probs.size() != acc.probs.size()) throw DomainError("averaging mixes categorical grids");
        for (std::size_t k = 0; k < acc.probs.size(); ++k) acc.probs[k] += weights(i, j) * b.probs[k];
      }
      out.emplace_back(std::move(acc));
    }
  }
  return out;
}

GaussianBelief bayes_gaussian_update(const GaussianBelief& prior, const Eigen::VectorXd& obs,
                                     const Eigen::MatrixXd& noise_cov) {
  const auto d = prior.mean.size();
  if (obs.size() != d || noise_cov.rows() != d || noise_cov.cols() != d || prior.cov.rows() != d) {
    throw DomainError("bayes update dimensions disagree");
  }
  Eigen::LLT<Eigen::MatrixXd> noise_chol(noise_cov);
  if (noise_chol.info() != Eigen::Success) throw DomainError("observation noise covariance is singular");
  // Kalman form, valid for singular priors: K = P (P + R)^-1.
  const Eigen::MatrixXd innovation = prior.cov + noise_cov;
  Eigen::LLT<Eigen::MatrixXd> chol(innovation);
  if (chol.info() != Eigen::Success) throw DomainError("innovation covariance is singular");
  const Eigen::MatrixXd gain = chol.solve(prior.cov).transpose();
  GaussianBelief post;
  post.mean = prior.mean + gain * (obs - prior.mean);
  post.cov = prior.cov - gain * prior.cov;
  post.cov = 0.5 * (post.cov + post.cov.transpose());
  return post;
}

GaussianBelief pool_gaussian_posteriors(std::span<const GaussianBelief> posteriors) {
  if (posteriors.empty()) throw DomainError("nothing to pool");
  const auto d = posteriors.front().mean.size();
  Eigen::MatrixXd precision = Eigen::MatrixXd::Zero(d, d);
  Eigen::VectorXd info = Eigen::VectorXd::Zero(d);
  for (const auto& p : posteriors) {
    Eigen::LLT<Eigen::MatrixXd> chol(p.cov);
    if (chol.info() != Eigen::Success) throw DomainError("pooling needs positive definite posteriors");
    const Eigen::MatrixXd prec = chol.solve(Eigen::MatrixXd::Identity(d, d));
    precision += prec;
    info += prec * p.mean;
  }
  Eigen::LLT<Eigen::MatrixXd> chol(precision);
  GaussianBelief pooled;
  pooled.cov = chol.solve(Eigen::MatrixXd::Identity(d, d));
  pooled.mean = pooled.cov * info;
  pooled.cov = 0.5 * (pooled.cov + pooled.cov.transpose());
  return pooled;
}

double total_variation(const StateBelief& a, const StateBelief& b) {
  if (a.index() != b.index()) throw DomainError("total variation between different belief representations");
  if (const auto* ca = std::get_if<CategoricalBelief>(&a)) {
    // Half the L1 distance over the union of the two supports.
    const auto& cb = std::get<CategoricalBelief>(b);
    std::vector<bool> matched(cb.grid.size(), false);
    double acc = 0.0;
    for (std::size_t k = 0; k < ca->grid.size(); ++k) {
      double q = 0.0;
      if (k < cb.grid.size() && !matched[k] && ca->grid[k].size() == cb.grid[k].size() && ca->grid[k] == cb.grid[k]) {
        q = cb.probs[k];
        matched[k] = true;
      } else {
        for (std::size_t l = 0; l < cb.grid.size(); ++l) {
          if (!matched[l] && ca->grid[k].size() == cb.grid[l].size() && ca->grid[k] == cb.grid[l]) {
            q = cb.probs[l];
            matched[l] = true;
            break;
          }
        }
      }
      acc += std::abs(ca->probs[k] - q);
    }
    for (std::size_t l = 0; l < cb.grid.size(); ++l) {
      if (!matched[l]) acc += cb.probs[l];
    }
    return 0.5 * acc;
  }
  const auto& ga = std::get<GaussianBelief>(a);
  const auto& gb = std::get<GaussianBelief>(b);
  if (ga.mean.size() != gb.mean.size()) throw DomainError("total variation over mismatched dimensions");
  const auto d = ga.mean.size();
  double s_min = std::numeric_limits<double>::infinity();
  double cov_term = 0.0;
  for (Eigen::Index k = 0; k < d; ++k) {
    const double s1 = std::sqrt(std::max(ga.cov(k, k), 0.0));
    const double s2 = std::sqrt(std::max(gb.cov(k, k), 0.0));
    s_min = std::min(s_min, std::max(s1, s2));
    if (s1 == s2) continue;
    const double h2 = 1.0 - std::sqrt(2.0 * s1 * s2 / (s1 * s1 + s2 * s2));
    cov_term += std::sqrt(2.0 * std::max(h2, 0.0));
  }
  const double gap = (ga.mean - gb.mean).norm();
  double mean_term = 0.0;
  if (gap > 0.0) {
    mean_term = s_min > 0.0 ? gap / (std::sqrt(2.0 * std::numbers::pi) * s_min) : 1.0;
  }
  return std::min(1.0, mean_term + cov_term);
}

TvRateSeries tv_rate_series(std::span<const std::vector<StateBelief>> trajectory,
                            const StateBelief& reference) {
  TvRateSeries out;
  for (const auto& step : trajectory) {
    double worst = 0.0;
    for (const auto& b : step) worst = std::max(worst, total_variation(b, reference));
    out.max_tv.push_back(worst);
  }
  for (std::size_t k = 0; k < out.max_tv.size(); ++k) {
    const double t = static_cast<double>(k + 1);
    out.scaled.push_back(k == 0 ? 0.0 : out.max_tv[k] * t / std::log(t));
  }
  const std::size_t head = std::max<std::size_t>(2, out.scaled.size() / 10);
  double bound = 0.0;
  for (std::size_t k = 0; k < std::min(head, out.scaled.size()); ++k) bound = std::max(bound, out.scaled[k]);
  for (std::size_t k = head; k < out.scaled.size(); ++k) {
    if (out.scaled[k] > bound) out.bound_exceeded = true;
  }
  return out;
}

SignalModel::SignalModel(Eigen::VectorXd noise_std) : noise_std_(std::move(noise_std)) {
  if (noise_std_.size() == 0 || (noise_std_.array() <= 0.0).any()) {
    throw DomainError("signal noise standard deviations must be positive");
  }
}

Eigen::VectorXd SignalModel::draw(const Eigen::VectorXd& theta, std::mt19937_64& rng) const {
  if (theta.size() != noise_std_.size()) throw DomainError("signal dimension mismatch");
  std::normal_distribution<double> noise(0.0, 1.0);
  Eigen::VectorXd obs(theta.size());
  for (Eigen::Index k = 0; k < theta.size(); ++k) obs(k) = theta(k) + noise_std_(k) * noise(rng);
  return obs;
}

Eigen::MatrixXd SignalModel::noise_cov() const { return noise_std_.array().square().matrix().asDiagonal(); }

StaticLearning::StaticLearning(std::vector<StateBelief> beliefs, StateBelief limit)
    : beliefs_(std::move(beliefs)), limit_(std::move(limit)) {}

std::vector<StateBelief> StaticLearning::advance(std::span<const StateBelief> previous, int) {
  return {previous.begin(), previous.end()};
}

AveragingLearning::AveragingLearning(std::vector<StateBelief> initial, Graph g, Eigen::MatrixXd weights)
    : initial_(std::move(initial)), graph_(std::move(g)), weights_(std::move(weights)) {
  if (static_cast<int>(initial_.size()) != graph_.size()) throw DomainError("one initial belief per node required");
  check_weights(graph_, weights_);
}

std::vector<StateBelief> AveragingLearning::advance(std::span<const StateBelief> previous, int) {
  return averaging_step(previous, graph_, weights_);
}

StateBelief AveragingLearning::limit_belief() const {
  const double inv_n = 1.0 / static_cast<double>(initial_.size());
  if (is_gaussian(initial_.front())) {
    const auto& first = std::get<GaussianBelief>(initial_.front());
    GaussianBelief avg{Eigen::VectorXd::Zero(first.mean.size()), Eigen::MatrixXd::Zero(first.cov.rows(), first.cov.cols())};
    for (const auto& b : initial_) {
      avg.mean += inv_n * std::get<GaussianBelief>(b).mean;
      avg.cov += inv_n * std::get<GaussianBelief>(b).cov;
    }
    return avg;
  }
  const auto& first = std::get<CategoricalBelief>(initial_.front());
  CategoricalBelief avg{first.grid, std::vector<double>(first.probs.size(), 0.0)};
  for (const auto& b : initial_) {
    const auto& c = std::get<CategoricalBelief>(b);
    for (std::size_t k = 0; k < avg.probs.size(); ++k) avg.probs[k] += inv_n * c.probs[k];
  }
  return avg;
}

BayesianLearning::BayesianLearning(Eigen::VectorXd truth, SignalModel signals, int agents, std::uint64_t seed)
    : truth_(std::move(truth)), signals_(std::move(signals)), agents_(agents), rng_(seed) {
  if (agents_ < 1) throw DomainError("bayesian learning needs at least one agent");
  if (truth_.size() != signals_.noise_std().size()) throw DomainError("signal dimension mismatch");
}

std::vector<StateBelief> BayesianLearning::initial_beliefs() {
  std::vector<StateBelief> out;
  for (int i = 0; i < agents_; ++i) out.emplace_back(GaussianBelief{signals_.draw(truth_, rng_), signals_.noise_cov()});
  return out;
}

std::vector<StateBelief> BayesianLearning::advance(std::span<const StateBelief> previous, int) {
  std::vector<StateBelief> out;
  out.reserve(previous.size());
  const Eigen::MatrixXd noise = signals_.noise_cov();
  for (const auto& b : previous) {
    out.emplace_back(bayes_gaussian_update(std::get<GaussianBelief>(b), signals_.draw(truth_, rng_), noise));
  }
  return out;
}

StateBelief BayesianLearning::limit_belief() const {
  return GaussianBelief{truth_, Eigen::MatrixXd::Zero(truth_.size(), truth_.size())};
}

}  // namespace netfp
