// Acceptance run: one PASS/FAIL line per criterion, with the measured numbers.
// Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "netfp/engine.hpp"
#include "netfp/equilibria.hpp"
#include "netfp/games.hpp"
#include "netfp/harness.hpp"
#include "oracles.hpp"

using namespace netfp;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& title, const std::string& detail) {
  std::printf("%s criterion %d (%s): %s\n", ok ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string num(double x, int prec = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, x);
  return buf;
}

Scenario scenario(const std::string& file) { return load_scenario(std::string(NETFP_SCENARIO_DIR) + "/" + file); }

std::vector<std::uint64_t> seeds_1_to(int n) {
  std::vector<std::uint64_t> s(static_cast<std::size_t>(n));
  std::iota(s.begin(), s.end(), 1);
  return s;
}

Strategy random_strategy(int m, std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  std::bernoulli_distribution pure(0.15);
  std::vector<double> p(static_cast<std::size_t>(m));
  if (pure(rng)) {
    p[std::uniform_int_distribution<int>(0, m - 1)(rng)] = 1.0;
    return Strategy(p);
  }
  double s = 0.0;
  for (auto& x : p) s += (x = e(rng));
  for (auto& x : p) x /= s;
  return Strategy(p);
}

std::vector<std::vector<double>> as_vectors(const std::vector<Strategy>& s) {
  std::vector<std::vector<double>> out;
  for (const auto& x : s) out.emplace_back(x.probs().begin(), x.probs().end());
  return out;
}

// ---- 1 ----------------------------------------------------------------------

void criterion_oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int instances = 0;
  double worst_beauty = 0.0, worst_cover = 0.0;

  const auto full_grid = BeautyContestSpec::default_grid();
  for (int rep = 0; rep < 600; ++rep, ++instances) {
    BeautyContestSpec spec;
    spec.n = std::uniform_int_distribution<int>(2, 4)(rng);
    const int m = std::uniform_int_distribution<int>(2, 5)(rng);
    std::vector<double> grid = full_grid;
    std::shuffle(grid.begin(), grid.end(), rng);
    grid.resize(static_cast<std::size_t>(m));
    std::sort(grid.begin(), grid.end());
    spec.grid = grid;
    spec.lambda = unit(rng);
    const GameSpec game = make_beauty_game(spec);

    std::vector<Strategy> nu;
    for (int j = 0; j < spec.n; ++j) nu.push_back(random_strategy(m, rng));
    std::vector<oracle::WeightedState> support;
    StateBelief mu;
    if (rep % 2 == 0) {
      CategoricalBelief c;
      const int k = std::uniform_int_distribution<int>(1, 4)(rng);
      double total = 0.0;
      for (int s = 0; s < k; ++s) {
        const double theta = 180.0 * unit(rng);
        const double w = 0.1 + unit(rng);
        c.grid.push_back(Eigen::VectorXd::Constant(1, theta));
        c.probs.push_back(w);
        total += w;
      }
      for (std::size_t s = 0; s < c.probs.size(); ++s) {
        c.probs[s] /= total;
        support.push_back({{c.grid[s](0)}, c.probs[s]});
      }
      mu = c;
    } else {
      const double mean = 180.0 * unit(rng), var = 900.0 * unit(rng);
      mu = GaussianBelief{Eigen::VectorXd::Constant(1, mean), Eigen::MatrixXd::Constant(1, 1, var)};
      support = oracle::gaussian_1d(mean, var);
    }
    const oracle::Payoff u = [&](int i, const std::vector<int>& a, const std::vector<double>& s) {
      return oracle::beauty_u(spec.lambda, grid, i, a, s[0]);
    };
    const auto nv = as_vectors(nu);
    for (int i = 0; i < spec.n; ++i) {
      const auto lib = action_utilities(game, i, BeliefProfile::from_full(i, nu), mu);
      for (int a = 0; a < m; ++a) {
        worst_beauty = std::max(worst_beauty, std::abs(lib[a] - oracle::expected_utility(u, spec.n, m, i, a, nv, support)));
      }
    }
  }

  for (int rep = 0; rep < 600; ++rep, ++instances) {
    const int n = std::uniform_int_distribution<int>(2, 4)(rng);
    TargetCoverSpec spec;
    std::vector<std::pair<double, double>> robots;
    for (int k = 0; k < n; ++k) {
      spec.robots.emplace_back(-0.3 + 0.6 * unit(rng), -0.3 + 0.6 * unit(rng));
      robots.emplace_back(spec.robots.back().x(), spec.robots.back().y());
      spec.targets.emplace_back(unit(rng) < 0.5 ? -1.0 : 1.0, unit(rng) < 0.5 ? -1.0 : 1.0);
    }
    const GameSpec game = make_cover_game(spec);
    std::vector<Strategy> nu;
    for (int j = 0; j < n; ++j) nu.push_back(random_strategy(n, rng));

    auto random_targets = [&] {
      std::vector<double> t;
      for (int k = 0; k < n; ++k) {
        const double angle = 2.0 * M_PI * unit(rng);
        const double radius = 0.8 + 0.6 * unit(rng);
        t.push_back(radius * std::cos(angle));
        t.push_back(radius * std::sin(angle));
      }
      return t;
    };
    std::vector<oracle::WeightedState> support;
    StateBelief mu;
    if (rep % 2 == 0) {
      CategoricalBelief c;
      const int k = std::uniform_int_distribution<int>(1, 3)(rng);
      for (int s = 0; s < k; ++s) {
        const auto t = random_targets();
        c.grid.push_back(Eigen::Map<const Eigen::VectorXd>(t.data(), static_cast<Eigen::Index>(t.size())));
        c.probs.push_back(1.0 / k);
        support.push_back({t, 1.0 / k});
      }
      mu = c;
    } else {
      // plug-in mean for Gaussian beliefs
      const auto t = random_targets();
      mu = GaussianBelief{Eigen::Map<const Eigen::VectorXd>(t.data(), static_cast<Eigen::Index>(t.size())),
                          0.04 * Eigen::MatrixXd::Identity(2 * n, 2 * n)};
      support.push_back({t, 1.0});
    }
    const oracle::Payoff u = [&](int i, const std::vector<int>& a, const std::vector<double>& s) {
      return oracle::cover_u(robots, i, a, s);
    };
    const auto nv = as_vectors(nu);
    for (int i = 0; i < n; ++i) {
      const auto lib = action_utilities(game, i, BeliefProfile::from_full(i, nu), mu);
      for (int a = 0; a < n; ++a) {
        worst_cover = std::max(worst_cover, std::abs(lib[a] - oracle::expected_utility(u, n, n, i, a, nv, support)));
      }
    }
  }

  const double secs = seconds_since(start);
  const bool ok = instances >= 1000 && worst_beauty <= 1e-9 && worst_cover <= 1e-9 && secs < 60.0;
  report(1, ok, "oracle equivalence",
         std::to_string(instances) + " instances, max |closed form - enumeration| beauty " + num(worst_beauty) +
             ", cover " + num(worst_cover) + ", " + num(secs, 3) + " s");
}

// ---- 2 ----------------------------------------------------------------------

void criterion_structure() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(7);
  BeautyContestSpec beauty;
  beauty.n = 20;
  beauty.grid = BeautyContestSpec::default_grid();
  const GameSpec bg = make_beauty_game(beauty);
  const bool beauty_sym = check_symmetry(bg, 10000, rng);
  const bool beauty_pot = check_potential_cycle(bg, 10000, rng);

  TargetCoverSpec same = TargetCoverSpec::reference_instance();
  for (auto& r : same.robots) r = Eigen::Vector2d(0.0, 0.0);
  const bool cover_same = check_potential_cycle(make_cover_game(same), 10000, rng);

  const TargetCoverSpec distinct = TargetCoverSpec::reference_instance();
  const bool cover_distinct = check_potential_cycle(make_cover_game(distinct), 10000, rng);

  // Explicit cycle: robots 1 and 2 move among targets 1, 2, 3 while the rest
  // sit on targets 4 and 5. The deviators' changes telescope to
  // h(x_2, t_1) - h(x_1, t_1).
  std::vector<std::pair<double, double>> robots;
  for (const auto& r : distinct.robots) robots.emplace_back(r.x(), r.y());
  const std::vector<double> theta = {-1, -1, 1, 1, -1, 1, 1, -1, 0, 1};
  auto u = [&](int i, std::vector<int> a) { return oracle::cover_u(robots, i, a, theta); };
  const std::vector<int> a0 = {0, 2, 3, 4, 3}, a1 = {1, 2, 3, 4, 3}, a2 = {1, 0, 3, 4, 3}, a3 = {0, 0, 3, 4, 3};
  const double cycle = (u(0, a1) - u(0, a0)) + (u(1, a2) - u(1, a1)) + (u(0, a3) - u(0, a2)) + (u(1, a0) - u(1, a3));

  const double secs = seconds_since(start);
  const bool ok = beauty_sym && beauty_pot && cover_same && cover_distinct && secs < 60.0;
  std::string detail = std::string("beauty symmetry ") + (beauty_sym ? "ok" : "violated") + ", beauty four-cycle " +
                       (beauty_pot ? "ok" : "violated") + ", cover four-cycle identical starts " +
                       (cover_same ? "ok" : "violated") + ", distinct starts " +
                       (cover_distinct ? "ok" : "violated") + " (explicit cycle sum " + num(cycle) +
                       ": with distinct starts the collision term makes the cycle sum h(x_j,t_k) - h(x_i,t_k)), " +
                       num(secs, 3) + " s";
  report(2, ok, "potential and symmetry structure", detail);
}

// ---- 3 / 4 ------------------------------------------------------------------

// Wide signals so that agents disagree for a while before settling.
BeautyContestSpec small_beauty(int n, double signal_std) {
  BeautyContestSpec spec;
  spec.n = n;
  spec.grid = {0, 45, 90, 135, 180};
  spec.signal_std = signal_std;
  return spec;
}

std::shared_ptr<StateLearning> averaging_from_signals(const BeautyContestSpec& spec, const Graph& g,
                                                      std::mt19937_64& rng) {
  std::normal_distribution<double> noise(0.0, spec.signal_std);
  std::vector<StateBelief> init;
  for (int i = 0; i < spec.n; ++i) {
    init.push_back(GaussianBelief{Eigen::VectorXd::Constant(1, spec.theta + noise(rng)),
                                  Eigen::MatrixXd::Constant(1, 1, spec.nominal_variance)});
  }
  return std::make_shared<AveragingLearning>(std::move(init), g, metropolis_weights(g));
}

struct TrackResult {
  double fitted = 0.0;
  double worst_ratio = 0.0;  // max over t of scaled error / fitted constant
  int worst_t = 0;
  double final_err = 0.0;
};

TrackResult action_sharing_tracking(const Graph& g, std::uint64_t seed) {
  const BeautyContestSpec spec = small_beauty(g.size(), 40.0);
  std::mt19937_64 rng(seed);
  EngineOptions opt;
  opt.record_histograms = false;
  Engine engine(make_beauty_game(spec), g, Variant::kActionSharing, averaging_from_signals(spec, g, rng), opt);

  // The error is recomputed here from the engine's stores rather than taken
  // from the round record.
  TrackResult r;
  const int horizon = 10000;
  for (int t = 1; t <= horizon; ++t) {
    engine.step();
    const auto& st = engine.state();
    const std::vector<double> fbar(st.centroid.dist.probs().begin(), st.centroid.dist.probs().end());
    double err = 0.0;
    for (const auto& e : st.estimates) {
      err = std::max(err, oracle::l2({e.dist.probs().begin(), e.dist.probs().end()}, fbar));
    }
    const double scaled = err * t / std::log(static_cast<double>(t));
    if (t == 100) r.fitted = scaled;
    if (t >= 100) {
      const double ratio = r.fitted > 0.0 ? scaled / r.fitted : (scaled > 0.0 ? INFINITY : 0.0);
      if (ratio > r.worst_ratio) {
        r.worst_ratio = ratio;
        r.worst_t = t;
      }
    }
    if (t == horizon) r.final_err = err;
  }
  return r;
}

void criterion_action_sharing_tracking() {
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 graph_rng(33);
  GeometricGraph geo;
  do {
    geo = random_geometric(10, 1.0, 0.5, graph_rng);
  } while (!is_strongly_connected(geo.graph));

  struct Case {
    const char* name;
    Graph g;
  };
  const std::vector<Case> cases = {{"ring", ring(10)}, {"geometric", geo.graph}, {"star", star(10)}};
  bool ok = true;
  std::string detail;
  for (const auto& c : cases) {
    const TrackResult r = action_sharing_tracking(c.g, 101);
    const bool case_ok = r.worst_ratio <= 1.0 + 1e-12 && r.final_err < 0.01;
    ok = ok && case_ok;
    detail += std::string(c.name) + ": C=" + num(r.fitted) + " max ratio " + num(r.worst_ratio) + " (t=" +
              std::to_string(r.worst_t) + ") err(1e4)=" + num(r.final_err) + "; ";
  }
  const double secs = seconds_since(start);
  ok = ok && secs < 120.0;
  report(3, ok, "action-sharing tracking", detail + num(secs, 3) + " s");
}

void criterion_histogram_sharing_tracking() {
  const auto start = std::chrono::steady_clock::now();
  const Graph g = path_graph(4);
  const BeautyContestSpec spec = small_beauty(4, 80.0);
  std::mt19937_64 rng(202);
  EngineOptions opt;
  opt.record_histograms = false;
  Engine engine(make_beauty_game(spec), g, Variant::kHistogramSharing, averaging_from_signals(spec, g, rng), opt);

  bool neighbors_exact = true;
  int first_mismatch = 0;
  double err = 0.0, peak = 0.0;
  int peak_t = 0;
  for (int t = 1; t <= 10000; ++t) {
    engine.step();
    const auto& st = engine.state();
    if (err > peak) {
      peak = err;
      peak_t = t - 1;
    }
    err = 0.0;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        if (i == j) continue;
        const auto& belief = st.nu[i][j];
        const auto& truth = st.own[j].dist;
        err = std::max(err, l2_distance(belief, truth));
        const auto& nb = g.neighbors(i);
        if (std::find(nb.begin(), nb.end(), j) != nb.end() && !(belief == truth) && neighbors_exact) {
          neighbors_exact = false;
          first_mismatch = t;
        }
      }
    }
  }
  const double secs = seconds_since(start);
  const bool ok = neighbors_exact && err < 0.01 && secs < 120.0;
  report(4, ok, "histogram-sharing tracking",
         "path n=4: max |nu^i_j - f_j| at t=1e4 " + num(err) + " (peak " + num(peak) + " at t=" +
             std::to_string(peak_t) + "), neighbor beliefs exact every round " +
             (neighbors_exact ? "yes" : "no (first at t=" + std::to_string(first_mismatch) + ")") + ", " +
             num(secs, 3) + " s");
}

// ---- 5 / 6 ------------------------------------------------------------------

double nearest_grid(const std::vector<double>& grid, double x) {
  double best = grid.front();
  for (double g : grid) {
    if (std::abs(g - x) < std::abs(best - x)) best = g;
  }
  return best;
}

std::vector<std::uint64_t> converged_geometric_seeds;

void criterion_beauty_desk_scale() {
  const auto start = std::chrono::steady_clock::now();
  const Scenario geo = scenario("beauty_geometric_n20.json");
  const Scenario sw = scenario("beauty_smallworld_n20.json");
  const auto seeds = seeds_1_to(50);
  const BatchSummary bg = run_batch(geo, seeds);
  const BatchSummary bs = run_batch(sw, seeds);

  auto mean_time = [](const BatchSummary& b) {
    double s = 0.0;
    for (const auto& o : b.seeds) s += o.converged_round ? *o.converged_round : b.horizon;
    return s / static_cast<double>(b.seeds.size());
  };
  int geo_conv = 0, within = 0, checked = 0;
  double worst_gap = 0.0;
  const auto grid = geo.beauty.grid;
  for (const auto* b : {&bg, &bs}) {
    for (const auto& o : b->seeds) {
      if (!o.error.empty() || !o.converged_round || !o.consensus_value) continue;
      if (b == &bg) {
        ++geo_conv;
        converged_geometric_seeds.push_back(o.seed);
      }
      ++checked;
      const double gap = std::abs(*o.consensus_value - nearest_grid(grid, o.pooled_signal_mean.at(0)));
      worst_gap = std::max(worst_gap, gap);
      if (gap <= 5.0 + 1e-9) ++within;
    }
  }
  const double frac = geo_conv / 50.0;
  const double mg = mean_time(bg), ms = mean_time(bs);
  const bool a = frac >= 0.6, b = ms < mg, c = checked > 0 && within == checked;
  const double secs = seconds_since(start);
  std::string detail = "(a) geometric consensus " + std::to_string(geo_conv) + "/50 = " + num(frac) + " [" +
                       (a ? "ok" : "below 0.6") + "]; (b) mean convergence small-world " + num(ms) +
                       " vs geometric " + num(mg) + " (failures counted at 500) [" + (b ? "ok" : "not less") +
                       "]; (c) " + std::to_string(within) + "/" + std::to_string(checked) +
                       " converged runs within 5 deg of the nearest grid point, worst gap " + num(worst_gap) + " [" +
                       (c ? "ok" : "violated") + "]; small-world consensus " + std::to_string(bs.converged) +
                       "/50; " + num(secs, 3) + " s";
  report(5, a && b && c && secs < 600.0, "beauty contest desk scale", detail);
}

void criterion_beta() {
  const auto start = std::chrono::steady_clock::now();
  Scenario s = scenario("beauty_geometric_n20.json");
  s.horizon = 2000;
  s.stop.type = "none";
  validate(s);
  const std::size_t take = std::min<std::size_t>(5, converged_geometric_seeds.size());
  if (take == 0) {
    report(6, false, "beta diagnostic", "no converged geometric run available");
    return;
  }
  bool ratio_ok = true, sign_ok = true;
  double worst_ratio = 0.0, min_beta = INFINITY;
  for (std::size_t k = 0; k < take; ++k) {
    const RunResult r = run_single(s, converged_geometric_seeds[k]);
    // Cesaro means recomputed from the raw series.
    double s200 = 0.0, s2000 = 0.0;
    for (std::size_t t = 0; t < r.beta.beta.size(); ++t) {
      const double b = r.beta.beta[t];
      min_beta = std::min(min_beta, b);
      if (t < 200) s200 += b;
      s2000 += b;
    }
    const double ratio = (s2000 / 2000.0) / (s200 / 200.0);
    worst_ratio = std::max(worst_ratio, ratio);
    ratio_ok = ratio_ok && ratio <= 0.1;
    sign_ok = sign_ok && min_beta >= -1e-9;
  }
  report(6, ratio_ok && sign_ok, "beta diagnostic",
         std::to_string(take) + " converged geometric runs, worst Cesaro(2000)/Cesaro(200) = " + num(worst_ratio) +
             " [" + (ratio_ok ? "ok" : "above 0.1") + "], min beta_t = " + num(min_beta) + " [" +
             (sign_ok ? "ok" : "negative") + "], " + num(seconds_since(start), 3) + " s");
}

// ---- 7 ----------------------------------------------------------------------

double objective_at_true_targets(const std::vector<int>& assignment) {
  const TargetCoverSpec ref = TargetCoverSpec::reference_instance();
  std::vector<std::pair<double, double>> robots;
  for (const auto& r : ref.robots) robots.emplace_back(r.x(), r.y());
  const std::vector<double> theta = {-1, -1, 1, 1, -1, 1, 1, -1, 0, 1};
  std::vector<int> a;
  for (int x : assignment) a.push_back(x - 1);
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) total += oracle::cover_u(robots, static_cast<int>(i), a, theta);
  return total;
}

void criterion_target_covering() {
  const auto start = std::chrono::steady_clock::now();
  const Scenario s = scenario("cover_star.json");
  const BatchSummary b = run_batch(s, seeds_1_to(50));
  const double worst_reported = objective_at_true_targets({1, 5, 3, 4, 2});
  int covered = 0, above = 0, match = 0;
  for (const auto& o : b.seeds) {
    if (!o.error.empty()) continue;
    if (o.termination == "coverage" && o.rounds <= 150) {
      ++covered;
      if (objective_at_true_targets(o.final_assignment) >= worst_reported - 1e-12) ++above;
    }
    if (!o.baseline_assignment.empty() && o.final_assignment == o.baseline_assignment) ++match;
  }
  const double fa = covered / 50.0;
  const double fb = covered ? static_cast<double>(above) / covered : 0.0;
  const double fc = match / 50.0;
  const bool a = fa >= 0.8, bb = fb >= 0.9, c = fc >= 0.6;
  const double secs = seconds_since(start);
  report(7, a && bb && c && secs < 600.0, "target covering",
         "(a) covered within 150 rounds " + std::to_string(covered) + "/50 [" + (a ? "ok" : "below 0.8") +
             "]; (b) objective >= " + num(worst_reported, 6) + " (assignment [1,5,3,4,2]) in " +
             std::to_string(above) + "/" + std::to_string(covered) + " covering runs = " + num(fb) + " [" +
             (bb ? "ok" : "below 0.9") + "]; (c) baseline assignment reached " + std::to_string(match) +
             "/50 = " + num(fc) + " [" + (c ? "ok" : "below 0.6") + "]; best assignment [1,2,3,4,5] objective " +
             num(objective_at_true_targets({1, 2, 3, 4, 5}), 6) + "; " + num(secs, 3) + " s");
}

// ---- 8 ----------------------------------------------------------------------

std::string rendered(const RunResult& r) {
  std::ostringstream csv;
  write_trajectory_csv(r, csv);
  if (has_positions(r)) write_positions_csv(r, csv);
  return csv.str() + trajectory_to_json(r);
}

void criterion_determinism() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  std::string detail;
  for (const char* file : {"cover_star.json", "beauty_geometric_n20.json", "beauty_smallworld_n20.json",
                           "beauty_geometric.json", "beauty_smallworld.json"}) {
    const Scenario s = scenario(file);
    const bool same = rendered(run_single(s, 17)) == rendered(run_single(s, 17));
    ok = ok && same;
    detail += std::string(file) + (same ? " identical; " : " DIFFERS; ");
  }
  const Scenario s = scenario("cover_star.json");
  const auto seeds = seeds_1_to(12);
  const bool batch_same = summary_to_json(run_batch(s, seeds, 1)) == summary_to_json(run_batch(s, seeds, 4));
  ok = ok && batch_same;
  detail += std::string("batch summary serial vs 4 threads ") + (batch_same ? "identical" : "DIFFERS");
  report(8, ok, "determinism", detail + ", " + num(seconds_since(start), 3) + " s");
}

}  // namespace

int main() {
  criterion_oracle_equivalence();
  criterion_structure();
  criterion_action_sharing_tracking();
  criterion_histogram_sharing_tracking();
  criterion_beauty_desk_scale();
  criterion_beta();
  criterion_target_covering();
  criterion_determinism();
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
