#include "netfp/engine.hpp"

#include <algorithm>
#include <cmath>

#include "netfp/errors.hpp"

namespace netfp {

namespace {

constexpr double kWeightTolerance = 1e-9;

// f + (1/t)(target - f)
Histogram blend(const Histogram& f, const std::vector<double>& target) {
  const double step = 1.0 / static_cast<double>(f.t);
  std::vector<double> next(f.dist.size());
  for (std::size_t k = 0; k < next.size(); ++k) next[k] = f.dist[k] + step * (target[k] - f.dist[k]);
  return {Strategy(std::move(next)), f.t + 1};
}

std::vector<double> mean_indicator(std::span<const ActionId> actions, std::size_t m) {
  if (actions.empty()) throw DomainError("cannot average an empty set of actions");
  std::vector<double> acc(m, 0.0);
  const double w = 1.0 / static_cast<double>(actions.size());
  for (ActionId a : actions) {
    if (a.value < 1 || static_cast<std::size_t>(a.value) > m) throw DomainError("action outside 1..m");
    acc[a.offset()] += w;
  }
  return acc;
}

}  // namespace

std::string_view to_string(Variant v) {
  return v == Variant::kActionSharing ? "action-sharing" : "histogram-sharing";
}

Variant variant_from_string(std::string_view s) {
  if (s == "action-sharing") return Variant::kActionSharing;
  if (s == "histogram-sharing") return Variant::kHistogramSharing;
  throw ConfigError("unknown variant '" + std::string(s) + "'");
}

Histogram initial_histogram(std::size_t m) { return {Strategy::uniform(m), 1}; }

Histogram update_own_histogram(const Histogram& f, ActionId a) {
  return blend(f, mean_indicator(std::span<const ActionId>(&a, 1), f.dist.size()));
}

Histogram update_centroid_estimate(const Histogram& fhat, std::span<const ActionId> neighbor_actions) {
  if (neighbor_actions.empty()) throw DomainError("agent has no neighbors to observe");
  return blend(fhat, mean_indicator(neighbor_actions, fhat.dist.size()));
}

Histogram update_centroid_truth(const Histogram& fbar, std::span<const ActionId> joint_action) {
  return blend(fbar, mean_indicator(joint_action, fbar.dist.size()));
}

WeightTensor::WeightTensor(int n) : n_(n), w_(static_cast<std::size_t>(n) * n * n, 0.0) {
  if (n < 1) throw DomainError("weight tensor needs at least one agent");
}

WeightTensor WeightTensor::uniform_over_neighbors(const Graph& g) {
  const int n = g.size();
  WeightTensor w(n);
  for (int i = 0; i < n; ++i) {
    const auto& nbrs = g.neighbors(i);
    if (nbrs.empty()) continue;
    const double share = 1.0 / static_cast<double>(nbrs.size());
    for (int j = 0; j < n; ++j) {
      if (j == i || std::binary_search(nbrs.begin(), nbrs.end(), j)) continue;
      for (int k : nbrs) w.set(i, j, k, share);
    }
  }
  return w;
}

void WeightTensor::validate(const Graph& g) const {
  if (g.size() != n_) throw DomainError("weight tensor does not match the graph size");
  for (int i = 0; i < n_; ++i) {
    const auto& nbrs = g.neighbors(i);
    for (int j = 0; j < n_; ++j) {
      const bool observed = j == i || std::binary_search(nbrs.begin(), nbrs.end(), j);
      double row = 0.0;
      for (int k = 0; k < n_; ++k) {
        const double x = (*this)(i, j, k);
        if (x < -kWeightTolerance) throw DomainError("negative mixing weight");
        if (x > kWeightTolerance && !std::binary_search(nbrs.begin(), nbrs.end(), k)) {
          throw DomainError("mixing weight placed on a non-neighbor source");
        }
        row += x;
      }
      if (!observed && std::abs(row - 1.0) > kWeightTolerance) {
        throw DomainError("mixing weights for a non-neighbor subject do not sum to one");
      }
    }
  }
}

BeliefStore update_nonneighbor_beliefs(const BeliefStore& previous, std::span<const Histogram> own_next,
                                       const Graph& g, const WeightTensor& w) {
  const int n = g.size();
  if (static_cast<int>(previous.size()) != n || static_cast<int>(own_next.size()) != n) {
    throw DomainError("belief store does not match the graph size");
  }
  const std::size_t m = own_next.front().dist.size();
  BeliefStore next(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto& nbrs = g.neighbors(i);
    auto& row = next[static_cast<std::size_t>(i)];
    row.reserve(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
      if (j == i || std::binary_search(nbrs.begin(), nbrs.end(), j)) {
        row.push_back(own_next[static_cast<std::size_t>(j)].dist);
        continue;
      }
      std::vector<double> acc(m, 0.0);
      double total = 0.0;
      for (int k : nbrs) {
        const double wk = w(i, j, k);
        if (wk == 0.0) continue;
        total += wk;
        const Strategy& src = previous[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
        for (std::size_t a = 0; a < m; ++a) acc[a] += wk * src[a];
      }
      if (std::abs(total - 1.0) > kWeightTolerance) {
        throw DomainError("mixing weights for a non-neighbor subject do not sum to one");
      }
      row.emplace_back(std::move(acc));
    }
  }
  return next;
}

BeliefSummary summarize(const StateBelief& b) {
  BeliefSummary s;
  s.gaussian = is_gaussian(b);
  s.mean = belief_mean(b);
  s.cov_trace = belief_covariance(b).trace();
  if (const auto* c = std::get_if<CategoricalBelief>(&b)) s.probs = c->probs;
  return s;
}

Engine::Engine(GameSpec game, Graph graph, Variant variant, std::shared_ptr<StateLearning> learning,
               EngineOptions options)
    : game_(std::move(game)),
      graph_(std::move(graph)),
      variant_(variant),
      learning_(std::move(learning)),
      options_(std::move(options)),
      weights_(options_.weights ? *options_.weights : WeightTensor::uniform_over_neighbors(graph_)),
      reference_(learning_ ? learning_->limit_belief() : StateBelief{}) {
  if (!learning_) throw ConfigError("engine needs a state learning process");
  if (game_.n != graph_.size()) throw ConfigError("game and graph disagree on the number of agents");
  if (game_.m < 1) throw ConfigError("game needs at least one action");
  const auto n = static_cast<std::size_t>(game_.n);
  const auto m = static_cast<std::size_t>(game_.m);
  state_.beliefs = learning_->initial_beliefs();
  if (state_.beliefs.size() != n) throw ConfigError("learning process produced the wrong number of beliefs");
  for (const auto& b : state_.beliefs) validate(b);
  state_.own.assign(n, initial_histogram(m));
  state_.centroid = initial_histogram(m);
  if (variant_ == Variant::kActionSharing) {
    for (int i = 0; i < game_.n; ++i) {
      if (graph_.neighbors(i).empty()) throw ConfigError("action sharing needs every agent to have a neighbor");
    }
    state_.estimates.assign(n, initial_histogram(m));
  } else {
    weights_.validate(graph_);
    state_.nu.assign(n, std::vector<Strategy>(n, Strategy::uniform(m)));
  }
}

RoundRecord Engine::step() {
  const int n = game_.n;
  const auto un = static_cast<std::size_t>(n);
  if (state_.t > 1) state_.beliefs = learning_->advance(state_.beliefs, state_.t);

  RoundRecord record;
  record.round = state_.t;
  record.actions.resize(un);
  for (int i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const BeliefProfile profile = variant_ == Variant::kActionSharing
                                      ? BeliefProfile::identical(i, n, state_.estimates[ui].dist)
                                      : BeliefProfile::from_full(i, state_.nu[ui]);
    record.actions[ui] = best_response(game_, i, profile, state_.beliefs[ui]);
  }
  for (const auto& b : state_.beliefs) {
    record.beliefs.push_back(summarize(b));
    record.tv_to_reference.push_back(total_variation(b, reference_));
  }

  for (int i = 0; i < n; ++i) {
    const auto ui = static_cast<std::size_t>(i);
    state_.own[ui] = update_own_histogram(state_.own[ui], record.actions[ui]);
  }
  state_.centroid = update_centroid_truth(state_.centroid, record.actions);

  if (variant_ == Variant::kActionSharing) {
    double worst = 0.0;
    std::vector<ActionId> seen;
    for (int i = 0; i < n; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      seen.clear();
      for (int j : graph_.neighbors(i)) seen.push_back(record.actions[static_cast<std::size_t>(j)]);
      state_.estimates[ui] = update_centroid_estimate(state_.estimates[ui], seen);
      worst = std::max(worst, l2_distance(state_.estimates[ui].dist, state_.centroid.dist));
    }
    record.track_err_centroid = worst;
  } else {
    state_.nu = update_nonneighbor_beliefs(state_.nu, state_.own, graph_, weights_);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        worst = std::max(worst, l2_distance(state_.nu[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                                            state_.own[static_cast<std::size_t>(j)].dist));
      }
    }
    record.track_err_pairwise = worst;
  }

  if (options_.record_histograms) {
    record.histograms.reserve(un);
    for (const auto& h : state_.own) record.histograms.push_back(h.dist);
  }
  state_.last_actions = record.actions;
  ++state_.t;
  return record;
}

ConsensusStop::ConsensusStop(int window) : window_(window) {
  if (window_ < 1) throw ConfigError("consensus window must be at least 1");
}

bool ConsensusStop::after_round(const Engine&, RoundRecord& record) {
  const ActionId first = record.actions.front();
  const bool agree = std::all_of(record.actions.begin(), record.actions.end(), [&](ActionId a) { return a == first; });
  if (!agree) {
    streak_ = 0;
    current_.reset();
    return false;
  }
  if (current_ && *current_ == first) {
    ++streak_;
  } else {
    current_ = first;
    streak_ = 1;
    streak_start_ = record.round;
  }
  return streak_ >= window_;
}

std::optional<int> ConsensusStop::converged_round() const {
  if (streak_ >= window_) return streak_start_;
  return std::nullopt;
}

Trajectory run(Engine& engine, int horizon, std::span<RoundHook* const> hooks) {
  if (horizon < 1) throw ConfigError("horizon must be at least 1");
  Trajectory traj;
  traj.variant = engine.variant();
  traj.agents = engine.game().n;
  traj.actions = engine.game().m;
  traj.termination = "horizon";
  for (int round = 1; round <= horizon; ++round) {
    RoundRecord record = engine.step();
    RoundHook* stopper = nullptr;
    for (RoundHook* hook : hooks) {
      if (hook->after_round(engine, record) && stopper == nullptr) stopper = hook;
    }
    traj.rounds.push_back(std::move(record));
    if (stopper != nullptr) {
      traj.termination = std::string(stopper->name());
      traj.converged_round = stopper->converged_round();
      break;
    }
  }
  return traj;
}

}  // namespace netfp
