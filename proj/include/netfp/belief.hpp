#pragma once

#include <Eigen/Dense>
#include <variant>
#include <vector>

namespace netfp {

// A realization of the unknown state. Scalar states are 1-vectors.
using WorldState = Eigen::VectorXd;

struct CategoricalBelief {
  std::vector<WorldState> grid;
  std::vector<double> probs;
};

struct GaussianBelief {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};

using StateBelief = std::variant<CategoricalBelief, GaussianBelief>;

// Throws DomainError on a non-simplex categorical or a non-symmetric /
// indefinite covariance (tolerance 1e-9).
void validate(const StateBelief& belief);

// Point mass represented as a one-point categorical.
StateBelief dirac(const WorldState& state);

Eigen::VectorXd belief_mean(const StateBelief& belief);
Eigen::MatrixXd belief_covariance(const StateBelief& belief);
int state_dimension(const StateBelief& belief);

inline bool is_gaussian(const StateBelief& b) { return std::holds_alternative<GaussianBelief>(b); }

}  // namespace netfp
