#include "netfp/belief.hpp"

#include <cmath>

#include "netfp/errors.hpp"
#include "netfp/strategy.hpp"

namespace netfp {

namespace {

constexpr double kCovTolerance = 1e-9;

void validate_categorical(const CategoricalBelief& b) {
  if (b.grid.empty() || b.grid.size() != b.probs.size()) {
    throw DomainError("categorical belief grid and probabilities differ in length");
  }
  double total = 0.0;
  for (double p : b.probs) {
    if (!std::isfinite(p) || p < -kSimplexTolerance) throw DomainError("categorical belief entry is negative");
    total += p;
  }
  if (std::abs(total - 1.0) > kSimplexTolerance) throw DomainError("categorical belief does not sum to one");
  const auto dim = b.grid.front().size();
  for (const auto& s : b.grid) {
    if (s.size() != dim) throw DomainError("categorical grid mixes state dimensions");
  }
}

void validate_gaussian(const GaussianBelief& b) {
  const auto d = b.mean.size();
  if (d == 0 || b.cov.rows() != d || b.cov.cols() != d) {
    throw DomainError("gaussian belief mean and covariance disagree in dimension");
  }
  if (!b.mean.allFinite() || !b.cov.allFinite()) throw DomainError("gaussian belief is not finite");
  const double scale = std::max(1.0, b.cov.cwiseAbs().maxCoeff());
  if ((b.cov - b.cov.transpose()).cwiseAbs().maxCoeff() > kCovTolerance * scale) {
    throw DomainError("gaussian covariance is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(b.cov, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -kCovTolerance * scale) {
    throw DomainError("gaussian covariance is not positive semidefinite");
  }
}

}  // namespace

void validate(const StateBelief& belief) {
  std::visit(
      [](const auto& b) {
        if constexpr (std::is_same_v<std::decay_t<decltype(b)>, CategoricalBelief>) {
          validate_categorical(b);
        } else {
          validate_gaussian(b);
        }
      },
      belief);
}

StateBelief dirac(const WorldState& state) { return CategoricalBelief{{state}, {1.0}}; }

Eigen::VectorXd belief_mean(const StateBelief& belief) {
  if (const auto* g = std::get_if<GaussianBelief>(&belief)) return g->mean;
  const auto& c = std::get<CategoricalBelief>(belief);
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(c.grid.front().size());
  for (std::size_t k = 0; k < c.grid.size(); ++k) mean += c.probs[k] * c.grid[k];
  return mean;
}

Eigen::MatrixXd belief_covariance(const StateBelief& belief) {
  if (const auto* g = std::get_if<GaussianBelief>(&belief)) return g->cov;
  const auto& c = std::get<CategoricalBelief>(belief);
  const Eigen::VectorXd mean = belief_mean(belief);
  const auto d = mean.size();
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t k = 0; k < c.grid.size(); ++k) {
    const Eigen::VectorXd diff = c.grid[k] - mean;
    cov += c.probs[k] * diff * diff.transpose();
  }
  return cov;
}

int state_dimension(const StateBelief& belief) {
  if (const auto* g = std::get_if<GaussianBelief>(&belief)) return static_cast<int>(g->mean.size());
  return static_cast<int>(std::get<CategoricalBelief>(belief).grid.front().size());
}

}  // namespace netfp
