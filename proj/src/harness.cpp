#include "netfp/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <numbers>
#include <nlohmann/json.hpp>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "netfp/errors.hpp"

namespace netfp {

using nlohmann::json;

namespace {

constexpr int kMaxGraphDraws = 1000;
constexpr int kMaxBaselineRobots = 8;

// ---- strict JSON reading ----------------------------------------------------

class Fields {
 public:
  Fields(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_ + ": expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const json& raw(const std::string& key) {
    seen_.insert(key);
    return j_.at(key);
  }

  std::string name(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  double number(const std::string& key, double fallback) {
    if (!has(key)) return fallback;
    return number(key);
  }
  double number(const std::string& key) {
    require(key);
    const json& v = raw(key);
    if (!v.is_number()) throw ConfigError(name(key) + ": expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(name(key) + ": must be finite");
    return x;
  }
  int integer(const std::string& key, int fallback) {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_number_integer()) throw ConfigError(name(key) + ": expected an integer");
    return v.get<int>();
  }
  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      throw ConfigError(name(key) + ": expected a nonnegative integer");
    }
    return v.get<std::uint64_t>();
  }
  std::string text(const std::string& key, std::string fallback) {
    if (!has(key)) return fallback;
    return text(key);
  }
  std::string text(const std::string& key) {
    require(key);
    const json& v = raw(key);
    if (!v.is_string()) throw ConfigError(name(key) + ": expected a string");
    return v.get<std::string>();
  }
  bool flag(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const json& v = raw(key);
    if (!v.is_boolean()) throw ConfigError(name(key) + ": expected true or false");
    return v.get<bool>();
  }
  Positions points(const std::string& key) {
    require(key);
    const json& v = raw(key);
    if (!v.is_array()) throw ConfigError(name(key) + ": expected a list of [x, y] pairs");
    Positions out;
    for (const auto& p : v) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
        throw ConfigError(name(key) + ": expected a list of [x, y] pairs");
      }
      out.emplace_back(p[0].get<double>(), p[1].get<double>());
    }
    return out;
  }

  void require(const std::string& key) const {
    if (!has(key)) throw ConfigError(name(key) + ": missing required field");
  }

  void finish() const {
    for (const auto& item : j_.items()) {
      if (!seen_.contains(item.key())) throw ConfigError(name(item.key()) + ": unknown key");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

std::vector<double> parse_grid(Fields& f) {
  const json& g = f.raw("grid");
  const std::string where = f.name("grid");
  if (g.is_array()) {
    std::vector<double> out;
    for (const auto& x : g) {
      if (!x.is_number()) throw ConfigError(where + ": expected numbers");
      out.push_back(x.get<double>());
    }
    return out;
  }
  Fields r(g, where);
  const double lo = r.number("min");
  const double hi = r.number("max");
  const double step = r.number("step");
  r.finish();
  if (!(step > 0.0) || hi < lo) throw ConfigError(where + ": need step > 0 and max >= min");
  std::vector<double> out;
  const auto count = static_cast<int>(std::floor((hi - lo) / step + 1e-9));
  for (int k = 0; k <= count; ++k) out.push_back(lo + k * step);
  return out;
}

void parse_beauty(Fields f, Scenario& s) {
  s.beauty.lambda = f.number("lambda", s.beauty.lambda);
  s.beauty.theta = f.number("theta", s.beauty.theta);
  s.beauty.signal_std = f.number("signal_std", s.beauty.signal_std);
  s.beauty.nominal_variance = f.number("nominal_variance", s.beauty.nominal_variance);
  s.beauty.grid = f.has("grid") ? parse_grid(f) : BeautyContestSpec::default_grid();
  s.movement_step = f.number("movement_step", 0.0);
  f.finish();
}

void parse_cover(Fields f, Scenario& s) {
  TargetCoverSpec ref = TargetCoverSpec::reference_instance();
  s.cover.targets = f.has("targets") ? f.points("targets") : ref.targets;
  s.cover.robots = f.has("robots") ? f.points("robots") : ref.robots;
  s.cover.obs_std = f.number("obs_std", ref.obs_std);
  s.cover.capture_radius = f.number("capture_radius", ref.capture_radius);
  s.cover.step = f.number("step", ref.step);
  f.finish();
}

void parse_graph(Fields f, Scenario& s) {
  s.graph.type = f.text("type");
  s.graph.n = f.integer("n", 0);
  s.graph.side = f.number("side", 1.0);
  s.graph.radius = f.number("radius", 0.3);
  if (f.has("rewire")) s.graph.rewire = f.number("rewire");
  s.graph.hub = f.integer("hub", 1);
  s.graph.directed = f.flag("directed", false);
  if (f.has("edges")) {
    const json& e = f.raw("edges");
    if (!e.is_array()) throw ConfigError(f.name("edges") + ": expected a list of [from, to] pairs");
    for (const auto& p : e) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer()) {
        throw ConfigError(f.name("edges") + ": expected a list of [from, to] pairs");
      }
      s.graph.edges.emplace_back(p[0].get<int>(), p[1].get<int>());
    }
  }
  f.finish();
}

void parse_learning(Fields f, Scenario& s) {
  s.learning.type = f.text("type");
  s.learning.representation = f.text("representation", "gaussian");
  f.finish();
}

void parse_stop(Fields f, Scenario& s) {
  s.stop.type = f.text("type", "none");
  s.stop.window = f.integer("window", 10);
  f.finish();
}

Scenario parse_scenario_json(const json& j) {
  Fields f(j, "");
  Scenario s;
  s.name = f.text("name", "scenario");
  s.game = f.text("game");
  if (s.game == "beauty") {
    f.require("beauty");
    parse_beauty(Fields(f.raw("beauty"), "beauty"), s);
  } else if (s.game == "cover") {
    if (f.has("cover")) {
      parse_cover(Fields(f.raw("cover"), "cover"), s);
    } else {
      s.cover = TargetCoverSpec::reference_instance();
    }
  } else {
    throw ConfigError("game: expected \"beauty\" or \"cover\", got \"" + s.game + "\"");
  }
  f.require("graph");
  parse_graph(Fields(f.raw("graph"), "graph"), s);
  if (f.has("learning")) {
    parse_learning(Fields(f.raw("learning"), "learning"), s);
  } else {
    s.learning.type = s.game == "beauty" ? "averaging" : "bayes";
  }
  const std::string variant = f.text("variant", s.game == "beauty" ? "action-sharing" : "histogram-sharing");
  try {
    s.variant = variant_from_string(variant);
  } catch (const ConfigError&) {
    throw ConfigError("variant: expected \"action-sharing\" or \"histogram-sharing\"");
  }
  s.horizon = f.integer("horizon", 500);
  if (f.has("stop")) parse_stop(Fields(f.raw("stop"), "stop"), s);
  s.seed = f.unsigned_integer("seed", 1);
  f.finish();
  return s;
}

json points_json(const Positions& p) {
  json out = json::array();
  for (const auto& x : p) out.push_back({x.x(), x.y()});
  return out;
}

json scenario_json(const Scenario& s) {
  json j;
  j["name"] = s.name;
  j["game"] = s.game;
  if (s.game == "beauty") {
    j["beauty"] = {{"lambda", s.beauty.lambda},
                   {"theta", s.beauty.theta},
                   {"signal_std", s.beauty.signal_std},
                   {"nominal_variance", s.beauty.nominal_variance},
                   {"grid", s.beauty.grid},
                   {"movement_step", s.movement_step}};
  } else {
    j["cover"] = {{"targets", points_json(s.cover.targets)},
                  {"robots", points_json(s.cover.robots)},
                  {"obs_std", s.cover.obs_std},
                  {"capture_radius", s.cover.capture_radius},
                  {"step", s.cover.step}};
  }
  json g = {{"type", s.graph.type}, {"n", s.graph.n}};
  if (s.graph.type == "geometric") {
    g["side"] = s.graph.side;
    g["radius"] = s.graph.radius;
    if (s.graph.rewire) g["rewire"] = *s.graph.rewire;
  }
  if (s.graph.type == "star") g["hub"] = s.graph.hub;
  if (s.graph.type == "explicit") {
    json edges = json::array();
    for (const auto& [a, b] : s.graph.edges) edges.push_back({a, b});
    g["edges"] = edges;
    g["directed"] = s.graph.directed;
  }
  j["graph"] = g;
  j["learning"] = {{"type", s.learning.type}, {"representation", s.learning.representation}};
  j["variant"] = std::string(to_string(s.variant));
  j["horizon"] = s.horizon;
  j["stop"] = {{"type", s.stop.type}, {"window", s.stop.window}};
  j["seed"] = s.seed;
  return j;
}

std::string fnv1a_hex(std::string_view data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int k = 15; k >= 0; --k) {
    out[static_cast<std::size_t>(k)] = kHex[h & 0xF];
    h >>= 4;
  }
  return out;
}

// ---- realization ------------------------------------------------------------

Graph star_with_hub(int n, int hub) {
  std::vector<std::pair<int, int>> edges;
  for (int k = 0; k < n; ++k) {
    if (k != hub) edges.emplace_back(hub, k);
  }
  return Graph::from_edges(n, edges, true);
}

StateBelief discretized_normal(const std::vector<double>& grid, double mean, double variance) {
  CategoricalBelief b;
  std::vector<double> w(grid.size());
  double total = 0.0;
  const double v = std::max(variance, 1e-12);
  // Shift by the largest log-weight so the exponentials cannot all underflow.
  double top = -std::numeric_limits<double>::infinity();
  for (double g : grid) top = std::max(top, -(g - mean) * (g - mean) / (2.0 * v));
  for (std::size_t k = 0; k < grid.size(); ++k) {
    w[k] = std::exp(-(grid[k] - mean) * (grid[k] - mean) / (2.0 * v) - top);
    total += w[k];
  }
  for (auto& x : w) x /= total;
  for (double g : grid) b.grid.push_back(WorldState::Constant(1, g));
  b.probs = std::move(w);
  return b;
}

// ---- hooks ------------------------------------------------------------------

class CoverMovement final : public RoundHook {
 public:
  CoverMovement(TargetCoverSpec spec, bool stop) : spec_(std::move(spec)), positions_(spec_.robots), stop_(stop) {}

  bool after_round(const Engine&, RoundRecord& record) override {
    std::vector<Positions> believed;
    believed.reserve(record.beliefs.size());
    for (const auto& b : record.beliefs) believed.push_back(unstack_positions(b.mean));
    positions_ = integrate_positions(spec_, positions_, record.actions, believed);
    record.positions = positions_;
    if (stop_ && all_targets_covered(spec_, positions_)) {
      covered_at_ = record.round;
      return true;
    }
    return false;
  }
  std::string_view name() const override { return "coverage"; }
  std::optional<int> converged_round() const override { return covered_at_; }
  const Positions& positions() const { return positions_; }

 private:
  TargetCoverSpec spec_;
  Positions positions_;
  bool stop_;
  std::optional<int> covered_at_;
};

// Heading a_i degrees, fixed displacement; plots only.
class HeadingMovement final : public RoundHook {
 public:
  HeadingMovement(Positions start, double step, std::vector<double> values)
      : positions_(std::move(start)), step_(step), values_(std::move(values)) {}

  bool after_round(const Engine&, RoundRecord& record) override {
    for (std::size_t i = 0; i < positions_.size(); ++i) {
      const double deg = values_[record.actions[i].offset()];
      const double rad = deg * std::numbers::pi / 180.0;
      positions_[i] += step_ * Eigen::Vector2d(std::cos(rad), std::sin(rad));
    }
    record.positions = positions_;
    return false;
  }
  std::string_view name() const override { return "heading"; }

 private:
  Positions positions_;
  double step_;
  std::vector<double> values_;
};

// ---- emission helpers -------------------------------------------------------

std::string fmt(double x) {
  if (std::isnan(x)) return "";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

json number_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }
double number_from(const json& j) { return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>(); }

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}
template <class T>
std::optional<T> optional_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

json seed_json(const SeedOutcome& o) {
  return {{"seed", o.seed},
          {"error", o.error},
          {"termination", o.termination},
          {"rounds", o.rounds},
          {"converged_round", optional_json(o.converged_round)},
          {"convergence_time", o.convergence_time},
          {"consensus_value", optional_json(o.consensus_value)},
          {"pooled_signal_mean", o.pooled_signal_mean},
          {"final_objective", optional_json(o.final_objective)},
          {"final_assignment", o.final_assignment},
          {"baseline_assignment", o.baseline_assignment},
          {"matches_baseline", o.matches_baseline},
          {"graph_draws", o.graph_draws},
          {"rewire_draws", o.rewire_draws},
          {"diameter", o.diameter},
          {"mean_path", o.mean_path},
          {"beta_cesaro", o.beta_cesaro}};
}

SeedOutcome seed_from(const json& j) {
  SeedOutcome o;
  o.seed = j.at("seed").get<std::uint64_t>();
  o.error = j.at("error").get<std::string>();
  o.termination = j.at("termination").get<std::string>();
  o.rounds = j.at("rounds").get<int>();
  o.converged_round = optional_from<int>(j.at("converged_round"));
  o.convergence_time = j.at("convergence_time").get<double>();
  o.consensus_value = optional_from<double>(j.at("consensus_value"));
  o.pooled_signal_mean = j.at("pooled_signal_mean").get<std::vector<double>>();
  o.final_objective = optional_from<double>(j.at("final_objective"));
  o.final_assignment = j.at("final_assignment").get<std::vector<int>>();
  o.baseline_assignment = j.at("baseline_assignment").get<std::vector<int>>();
  o.matches_baseline = j.at("matches_baseline").get<bool>();
  o.graph_draws = j.at("graph_draws").get<int>();
  o.rewire_draws = j.at("rewire_draws").get<int>();
  o.diameter = j.at("diameter").get<double>();
  o.mean_path = j.at("mean_path").get<double>();
  o.beta_cesaro = j.at("beta_cesaro").get<double>();
  return o;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ResourceError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw ResourceError("failed writing " + path.string());
}

}  // namespace

// ---- scenarios --------------------------------------------------------------

Scenario parse_scenario(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  Scenario s;
  try {
    s = parse_scenario_json(j);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed scenario: ") + e.what());
  }
  validate(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_text_file(path);
  } catch (const ResourceError& e) {
    throw ConfigError(e.what());
  }
  return parse_scenario(text);
}

void validate(Scenario& s) {
  s.warnings.clear();
  auto fail = [](const std::string& field, const std::string& why) { throw ConfigError(field + ": " + why); };
  if (s.horizon < 1) fail("horizon", "must be at least 1");
  if (s.game == "beauty") {
    if (!(s.beauty.lambda > 0.0 && s.beauty.lambda < 1.0)) fail("beauty.lambda", "must lie in (0, 1)");
    if (s.beauty.grid.empty()) fail("beauty.grid", "must not be empty");
    if (!std::is_sorted(s.beauty.grid.begin(), s.beauty.grid.end())) fail("beauty.grid", "must be increasing");
    if (!(s.beauty.signal_std > 0.0)) fail("beauty.signal_std", "must be positive");
    if (!(s.beauty.nominal_variance > 0.0)) fail("beauty.nominal_variance", "must be positive");
    if (!(s.movement_step >= 0.0)) fail("beauty.movement_step", "must be nonnegative");
    if (s.graph.n < 2) fail("graph.n", "beauty contest needs at least two agents");
    s.beauty.n = s.graph.n;
  } else if (s.game == "cover") {
    if (s.cover.robots.size() < 2) fail("cover.robots", "need at least two robots");
    if (s.cover.targets.size() != s.cover.robots.size()) fail("cover.targets", "need one target per robot");
    if (!(s.cover.obs_std > 0.0)) fail("cover.obs_std", "must be positive");
    if (!(s.cover.capture_radius > 0.0)) fail("cover.capture_radius", "must be positive");
    if (!(s.cover.step > 0.0)) fail("cover.step", "must be positive");
    if (s.graph.n == 0) s.graph.n = s.cover.n();
    if (s.graph.n != s.cover.n()) fail("graph.n", "must equal the number of robots");
    if (s.learning.representation != "gaussian") fail("learning.representation", "cover beliefs are gaussian");
  } else {
    fail("game", "expected \"beauty\" or \"cover\"");
  }
  const auto& g = s.graph;
  static const std::set<std::string> kGraphs = {"geometric", "star", "ring", "path", "complete", "explicit"};
  if (!kGraphs.contains(g.type)) fail("graph.type", "unknown graph type \"" + g.type + "\"");
  if (g.n < 1) fail("graph.n", "must be positive");
  if (g.type == "geometric") {
    if (!(g.side > 0.0)) fail("graph.side", "must be positive");
    if (!(g.radius > 0.0)) fail("graph.radius", "must be positive");
    if (g.rewire && !(*g.rewire >= 0.0 && *g.rewire <= 1.0)) fail("graph.rewire", "must lie in [0, 1]");
  } else if (g.rewire) {
    fail("graph.rewire", "only geometric graphs are rewired");
  }
  if (g.type == "star" && (g.hub < 1 || g.hub > g.n)) fail("graph.hub", "must lie in 1..n");
  if (g.type == "explicit") {
    for (const auto& [a, b] : g.edges) {
      if (a < 1 || a > g.n || b < 1 || b > g.n || a == b) fail("graph.edges", "edges must join distinct nodes in 1..n");
    }
  }
  static const std::set<std::string> kLearning = {"averaging", "bayes", "static"};
  if (!kLearning.contains(s.learning.type)) fail("learning.type", "expected averaging, bayes or static");
  if (s.learning.representation != "gaussian" && s.learning.representation != "categorical") {
    fail("learning.representation", "expected gaussian or categorical");
  }
  if (s.learning.representation == "categorical" && s.learning.type == "bayes") {
    fail("learning.representation", "bayes learning keeps gaussian beliefs");
  }
  if (s.stop.type != "none" && s.stop.type != "consensus" && s.stop.type != "coverage") {
    fail("stop.type", "expected none, consensus or coverage");
  }
  if (s.stop.window < 1) fail("stop.window", "must be at least 1");
  if (s.stop.type == "coverage" && s.game != "cover") fail("stop.type", "coverage applies to the cover game only");

  const GameSpec game = s.game == "beauty" ? make_beauty_game(s.beauty) : make_cover_game(s.cover);
  if (s.variant == Variant::kActionSharing) {
    std::mt19937_64 rng(0x5eedULL);
    if (!check_symmetry(game, 200, rng)) {
      s.warnings.push_back("game fails the symmetry check; action sharing assumes a symmetric game, "
                           "histogram-sharing is the supported variant");
    }
  }
}

std::string scenario_to_json(const Scenario& scenario) { return scenario_json(scenario).dump(2); }

std::string scenario_fingerprint(const Scenario& scenario) {
  json j = scenario_json(scenario);
  j.erase("seed");
  return fnv1a_hex(j.dump());
}

std::uint64_t derive_seed(std::uint64_t seed, Stream stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xFFFFFFFFULL), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream)};
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

Realization realize(const Scenario& s, std::uint64_t seed) {
  Realization r;
  const int n = s.graph.n;
  const auto& gc = s.graph;
  if (gc.type == "geometric") {
    std::mt19937_64 rng(derive_seed(seed, Stream::kGraph));
    r.graph_draws = 0;
    while (true) {
      ++r.graph_draws;
      auto gg = random_geometric(n, gc.side, gc.radius, rng);
      if (is_strongly_connected(gg.graph)) {
        r.graph = std::move(gg.graph);
        r.node_positions = std::move(gg.positions);
        break;
      }
      if (r.graph_draws >= kMaxGraphDraws) throw ResourceError("no connected geometric graph after 1000 draws");
    }
    if (gc.rewire) {
      std::mt19937_64 rw(derive_seed(seed, Stream::kRewire));
      while (true) {
        ++r.rewire_draws;
        Graph g = small_world_rewire(r.graph, *gc.rewire, rw);
        if (is_strongly_connected(g)) {
          r.graph = std::move(g);
          break;
        }
        if (r.rewire_draws >= kMaxGraphDraws) throw ResourceError("no connected rewiring after 1000 attempts");
      }
    }
  } else if (gc.type == "star") {
    r.graph = star_with_hub(n, gc.hub - 1);
  } else if (gc.type == "ring") {
    r.graph = ring(n);
  } else if (gc.type == "path") {
    r.graph = path_graph(n);
  } else if (gc.type == "complete") {
    r.graph = complete_graph(n);
  } else {
    std::vector<std::pair<int, int>> edges;
    for (const auto& [a, b] : gc.edges) edges.emplace_back(a - 1, b - 1);
    r.graph = Graph::from_edges(n, edges, !gc.directed);
  }

  Eigen::VectorXd truth;
  Eigen::VectorXd noise_std;
  if (s.game == "beauty") {
    BeautyContestSpec spec = s.beauty;
    spec.n = n;
    r.game = make_beauty_game(spec);
    truth = Eigen::VectorXd::Constant(1, spec.theta);
    noise_std = Eigen::VectorXd::Constant(1, spec.signal_std);
  } else {
    r.game = make_cover_game(s.cover);
    truth = stack_positions(s.cover.targets);
    noise_std = Eigen::VectorXd::Constant(truth.size(), s.cover.obs_std);
  }
  const SignalModel model(noise_std);

  if (s.learning.type == "bayes") {
    const std::uint64_t learn_seed = derive_seed(seed, Stream::kLearning);
    BayesianLearning twin(truth, model, n, learn_seed);
    for (const auto& b : twin.initial_beliefs()) r.signals.push_back(belief_mean(b));
    r.learning = std::make_shared<BayesianLearning>(truth, model, n, learn_seed);
  } else {
    std::mt19937_64 rng(derive_seed(seed, Stream::kSignals));
    std::vector<StateBelief> initial;
    for (int i = 0; i < n; ++i) {
      Eigen::VectorXd signal = model.draw(truth, rng);
      if (s.game == "beauty" && s.learning.representation == "categorical") {
        initial.push_back(discretized_normal(s.beauty.grid, signal(0), s.beauty.nominal_variance));
      } else if (s.game == "beauty") {
        initial.emplace_back(GaussianBelief{signal, Eigen::MatrixXd::Constant(1, 1, s.beauty.nominal_variance)});
      } else {
        initial.emplace_back(GaussianBelief{signal, model.noise_cov()});
      }
      r.signals.push_back(std::move(signal));
    }
    const Eigen::MatrixXd weights = metropolis_weights(r.graph);
    auto averaging = std::make_shared<AveragingLearning>(initial, r.graph, weights);
    if (s.learning.type == "averaging") {
      r.learning = averaging;
    } else {
      r.learning = std::make_shared<StaticLearning>(initial, averaging->limit_belief());
    }
  }
  r.pooled_signal_mean = Eigen::VectorXd::Zero(truth.size());
  for (const auto& x : r.signals) r.pooled_signal_mean += x / static_cast<double>(n);
  return r;
}

BaselineResult centralized_baseline(const TargetCoverSpec& spec, const Positions& believed_targets) {
  const int n = spec.n();
  if (n > kMaxBaselineRobots) throw ResourceError("centralized baseline enumerates n! assignments; n > 8");
  if (static_cast<int>(believed_targets.size()) != n) throw DomainError("one believed position per target required");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 1);
  const Eigen::VectorXd believed = stack_positions(believed_targets);
  BaselineResult best;
  best.believed_objective = -std::numeric_limits<double>::infinity();
  do {
    std::vector<ActionId> a;
    for (int k : perm) a.push_back(ActionId{k});
    const double value = cover_global_objective(spec, a, believed);
    if (value > best.believed_objective) {
      best.believed_objective = value;
      best.assignment = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  std::vector<ActionId> a;
  for (int k : best.assignment) a.push_back(ActionId{k});
  best.true_objective = cover_global_objective(spec, a, stack_positions(spec.targets));
  return best;
}

BaselineResult centralized_baseline(const Scenario& scenario, std::uint64_t seed) {
  if (scenario.game != "cover") throw ConfigError("game: the centralized baseline needs a cover scenario");
  const Realization r = realize(scenario, seed);
  const auto initial = r.learning->initial_beliefs();
  std::vector<GaussianBelief> posteriors;
  for (const auto& b : initial) posteriors.push_back(std::get<GaussianBelief>(b));
  const GaussianBelief pooled = pool_gaussian_posteriors(posteriors);
  return centralized_baseline(scenario.cover, unstack_positions(pooled.mean));
}

// ---- runs -------------------------------------------------------------------

RunResult run_single(const Scenario& scenario, std::optional<std::uint64_t> seed) {
  RunResult out;
  out.scenario = scenario;
  out.seed = seed.value_or(scenario.seed);
  out.scenario.seed = out.seed;
  out.fingerprint = scenario_fingerprint(scenario);

  Realization r = realize(scenario, out.seed);
  out.graph_draws = r.graph_draws;
  out.rewire_draws = r.rewire_draws;
  out.pooled_signal_mean = to_std(r.pooled_signal_mean);
  out.action_values = r.game.action_values;
  try {
    const PathStats ps = diameter_and_mean_path(r.graph);
    out.diameter = ps.diameter;
    out.mean_path = ps.mean_path;
  } catch (const DomainError&) {
    out.diameter = std::numeric_limits<double>::infinity();
    out.mean_path = std::numeric_limits<double>::infinity();
  }

  Engine engine(r.game, r.graph, scenario.variant, r.learning);
  std::vector<std::unique_ptr<RoundHook>> owned;
  CoverMovement* cover_hook = nullptr;
  if (scenario.game == "cover") {
    auto h = std::make_unique<CoverMovement>(scenario.cover, scenario.stop.type == "coverage");
    cover_hook = h.get();
    owned.push_back(std::move(h));
  } else if (scenario.movement_step > 0.0) {
    Positions start = r.node_positions;
    if (start.empty()) start.assign(static_cast<std::size_t>(scenario.graph.n), Eigen::Vector2d::Zero());
    owned.push_back(std::make_unique<HeadingMovement>(std::move(start), scenario.movement_step, r.game.action_values));
  }
  if (scenario.stop.type == "consensus") owned.push_back(std::make_unique<ConsensusStop>(scenario.stop.window));
  std::vector<RoundHook*> hooks;
  for (auto& h : owned) hooks.push_back(h.get());

  out.trajectory = run(engine, scenario.horizon, hooks);
  out.beta = beta_series(r.game, out.trajectory, engine.reference());

  const auto& last = out.trajectory.rounds.back();
  if (out.trajectory.termination == "consensus") {
    out.consensus_value = r.game.action_values[last.actions.front().offset()];
  }
  if (scenario.game == "cover") {
    out.covered = all_targets_covered(scenario.cover, cover_hook->positions());
    out.final_objective = cover_global_objective(scenario.cover, last.actions, stack_positions(scenario.cover.targets));
    for (ActionId a : last.actions) out.final_assignment.push_back(a.value);
    std::vector<GaussianBelief> posteriors;
    for (const auto& b : engine.state().beliefs) posteriors.push_back(std::get<GaussianBelief>(b));
    const GaussianBelief pooled = pool_gaussian_posteriors(posteriors);
    const BaselineResult base = centralized_baseline(scenario.cover, unstack_positions(pooled.mean));
    out.baseline_assignment = base.assignment;
    out.baseline_objective = base.true_objective;
  }
  return out;
}

SeedOutcome outcome_of(const RunResult& r) {
  SeedOutcome o;
  o.seed = r.seed;
  o.termination = r.trajectory.termination;
  o.rounds = static_cast<int>(r.trajectory.rounds.size());
  o.converged_round = r.trajectory.converged_round;
  o.convergence_time = o.converged_round ? *o.converged_round : r.scenario.horizon;
  o.consensus_value = r.consensus_value;
  o.pooled_signal_mean = r.pooled_signal_mean;
  o.final_objective = r.final_objective;
  o.final_assignment = r.final_assignment;
  o.baseline_assignment = r.baseline_assignment;
  o.matches_baseline = !r.final_assignment.empty() && r.final_assignment == r.baseline_assignment;
  o.graph_draws = r.graph_draws;
  o.rewire_draws = r.rewire_draws;
  o.diameter = r.diameter;
  o.mean_path = r.mean_path;
  o.beta_cesaro = r.beta.cesaro.empty() ? 0.0 : r.beta.cesaro.back();
  return o;
}

BatchSummary aggregate(std::string name, std::string fingerprint, int horizon, std::vector<SeedOutcome> seeds) {
  BatchSummary s;
  s.name = std::move(name);
  s.fingerprint = std::move(fingerprint);
  s.horizon = horizon;
  s.runs = static_cast<int>(seeds.size());
  std::vector<double> times;
  double converged_total = 0.0;
  double diameter = 0.0;
  double path = 0.0;
  double objective = 0.0;
  int with_objective = 0;
  int matches = 0;
  for (const auto& o : seeds) {
    if (!o.error.empty()) {
      ++s.errors;
      continue;
    }
    times.push_back(o.convergence_time);
    diameter += o.diameter;
    path += o.mean_path;
    if (o.converged_round) {
      ++s.converged;
      converged_total += o.convergence_time;
    } else {
      ++s.failures;
    }
    if (o.final_objective) {
      objective += *o.final_objective;
      ++with_objective;
      if (o.matches_baseline) ++matches;
    }
  }
  if (!times.empty()) {
    const double count = static_cast<double>(times.size());
    s.mean_convergence = std::accumulate(times.begin(), times.end(), 0.0) / count;
    std::sort(times.begin(), times.end());
    const std::size_t mid = times.size() / 2;
    s.median_convergence = times.size() % 2 == 1 ? times[mid] : 0.5 * (times[mid - 1] + times[mid]);
    s.mean_diameter = diameter / count;
    s.mean_path = path / count;
  }
  if (s.converged > 0) s.mean_convergence_converged = converged_total / s.converged;
  if (with_objective > 0) {
    s.mean_final_objective = objective / with_objective;
    s.fraction_baseline = static_cast<double>(matches) / with_objective;
  }
  s.seeds = std::move(seeds);
  return s;
}

BatchSummary run_batch(const Scenario& scenario, std::span<const std::uint64_t> seeds, int parallelism) {
  if (seeds.empty()) throw ConfigError("seeds: the seed list is empty");
  if (parallelism < 1) throw ConfigError("parallel: must be at least 1");
  std::vector<SeedOutcome> outcomes(seeds.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < seeds.size(); k = next++) {
      try {
        outcomes[k] = outcome_of(run_single(scenario, seeds[k]));
      } catch (const std::exception& e) {
        outcomes[k].seed = seeds[k];
        outcomes[k].error = e.what();
      }
    }
  };
  const auto threads = std::min<std::size_t>(static_cast<std::size_t>(parallelism), seeds.size());
  std::vector<std::thread> pool;
  for (std::size_t k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return aggregate(scenario.name, scenario_fingerprint(scenario), scenario.horizon, std::move(outcomes));
}

// ---- verification -----------------------------------------------------------

bool VerifyReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.expected == c.observed; });
}

namespace {

Strategy random_strategy(std::size_t m, std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  std::bernoulli_distribution sparse(0.2);
  std::vector<double> w(m);
  double total = 0.0;
  for (auto& x : w) {
    x = sparse(rng) ? 0.0 : e(rng);
    total += x;
  }
  if (total == 0.0) {
    w[0] = 1.0;
    total = 1.0;
  }
  for (auto& x : w) x /= total;
  return Strategy(std::move(w));
}

StateBelief random_state_belief(const GameSpec& game, std::mt19937_64& rng) {
  std::bernoulli_distribution categorical(0.5);
  if (categorical(rng)) {
    CategoricalBelief c;
    std::vector<double> w;
    for (int k = 0; k < 3; ++k) {
      c.grid.push_back(game.sample_state(rng));
      w.push_back(std::exponential_distribution<double>(1.0)(rng));
    }
    const double total = w[0] + w[1] + w[2];
    for (auto& x : w) x /= total;
    c.probs = std::move(w);
    return c;
  }
  const WorldState mean = game.sample_state(rng);
  Eigen::MatrixXd a = Eigen::MatrixXd::Random(mean.size(), mean.size());
  return GaussianBelief{mean, 0.01 * a * a.transpose()};
}

}  // namespace

VerifyReport verify_scenario(const Scenario& scenario, int samples, std::uint64_t seed) {
  if (samples < 1) throw ConfigError("samples: must be at least 1");
  VerifyReport report;
  GameSpec game;
  if (scenario.game == "beauty") {
    BeautyContestSpec spec = scenario.beauty;
    spec.n = scenario.graph.n;
    game = make_beauty_game(spec);
  } else {
    game = make_cover_game(scenario.cover);
  }
  std::mt19937_64 rng(seed);

  CheckOutcome sym{"symmetry", game.symmetric, check_symmetry(game, samples, rng), ""};
  if (!sym.expected) sym.note = "robots start from distinct positions, so the game is not symmetric";
  report.checks.push_back(sym);

  CheckOutcome pot{"potential_cycle", true, check_potential_cycle(game, samples, rng), ""};
  if (!pot.observed && scenario.game == "cover" && !game.symmetric) {
    pot.note = "distinct starting positions break the exact four-cycle identity";
  }
  report.checks.push_back(pot);

  // Oracle equivalence, on a reduced copy of the game if enumeration is too big.
  GameSpec small = game;
  std::string reduced;
  if (std::pow(static_cast<double>(game.m), game.n - 1) * 2 * game.n > static_cast<double>(kDefaultEnumerationCap)) {
    if (scenario.game == "beauty") {
      BeautyContestSpec spec = scenario.beauty;
      spec.n = 3;
      std::vector<double> grid;
      for (int k = 0; k < 5; ++k) grid.push_back(spec.grid[static_cast<std::size_t>(k) * (spec.grid.size() - 1) / 4]);
      spec.grid = grid;
      small = make_beauty_game(spec);
      reduced = "reduced instance n=3, m=5";
    } else {
      TargetCoverSpec spec = scenario.cover;
      spec.robots.resize(4);
      spec.targets.resize(4);
      small = make_cover_game(spec);
      reduced = "reduced instance n=4";
    }
  }
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    std::uniform_int_distribution<int> agent(0, small.n - 1);
    const AgentId i = agent(rng);
    std::vector<Strategy> all;
    for (int j = 0; j < small.n; ++j) all.push_back(random_strategy(static_cast<std::size_t>(small.m), rng));
    const BeliefProfile nu = BeliefProfile::from_full(i, all);
    const StateBelief mu = random_state_belief(small, rng);
    const auto closed = action_utilities(small, i, nu, mu);
    for (int k = 1; k <= small.m; ++k) {
      const double brute = brute_force_expected_utility(small, i, ActionId{k}, nu, mu);
      worst = std::max(worst, std::abs(closed[static_cast<std::size_t>(k - 1)] - brute));
    }
  }
  CheckOutcome oracle{"oracle_equivalence", true, worst <= 1e-9, ""};
  char buf[64];
  std::snprintf(buf, sizeof buf, "max abs difference %.3g", worst);
  oracle.note = reduced.empty() ? buf : reduced + ", " + buf;
  report.checks.push_back(oracle);
  return report;
}

// ---- emission ---------------------------------------------------------------

void write_trajectory_csv(const RunResult& r, std::ostream& out) {
  out << kTrajectoryCsvHeader << '\n';
  for (std::size_t t = 0; t < r.trajectory.rounds.size(); ++t) {
    const auto& rec = r.trajectory.rounds[t];
    const double beta = t < r.beta.beta.size() ? r.beta.beta[t] : kNotApplicable;
    const double cesaro = t < r.beta.cesaro.size() ? r.beta.cesaro[t] : kNotApplicable;
    for (std::size_t i = 0; i < rec.actions.size(); ++i) {
      const ActionId a = rec.actions[i];
      std::string mean;
      const auto& m = rec.beliefs[i].mean;
      for (Eigen::Index d = 0; d < m.size(); ++d) {
        if (d > 0) mean += ';';
        mean += fmt(m(d));
      }
      out << rec.round << ',' << i + 1 << ',' << a.value << ',' << fmt(r.action_values[a.offset()]) << ',' << mean
          << ',' << fmt(rec.tv_to_reference[i]) << ',' << fmt(rec.track_err_centroid) << ','
          << fmt(rec.track_err_pairwise) << ',' << fmt(beta) << ',' << fmt(cesaro) << '\n';
    }
  }
}

bool has_positions(const RunResult& r) {
  return std::any_of(r.trajectory.rounds.begin(), r.trajectory.rounds.end(),
                     [](const RoundRecord& rec) { return !rec.positions.empty(); });
}

void write_positions_csv(const RunResult& r, std::ostream& out) {
  out << "round,agent,x,y\n";
  for (const auto& rec : r.trajectory.rounds) {
    for (std::size_t i = 0; i < rec.positions.size(); ++i) {
      out << rec.round << ',' << i + 1 << ',' << fmt(rec.positions[i].x()) << ',' << fmt(rec.positions[i].y()) << '\n';
    }
  }
}

std::string trajectory_to_json(const RunResult& r) {
  json j;
  j["fingerprint"] = r.fingerprint;
  j["scenario"] = scenario_json(r.scenario);
  j["seed"] = r.seed;
  j["variant"] = std::string(to_string(r.trajectory.variant));
  j["agents"] = r.trajectory.agents;
  j["actions"] = r.trajectory.actions;
  j["action_values"] = r.action_values;
  j["termination"] = r.trajectory.termination;
  j["converged_round"] = optional_json(r.trajectory.converged_round);
  j["graph_draws"] = r.graph_draws;
  j["rewire_draws"] = r.rewire_draws;
  j["diameter"] = number_or_null(r.diameter);
  j["mean_path"] = number_or_null(r.mean_path);
  j["pooled_signal_mean"] = r.pooled_signal_mean;
  j["consensus_value"] = optional_json(r.consensus_value);
  j["covered"] = r.covered;
  j["final_objective"] = optional_json(r.final_objective);
  j["final_assignment"] = r.final_assignment;
  j["baseline_assignment"] = r.baseline_assignment;
  j["baseline_objective"] = optional_json(r.baseline_objective);
  json rounds = json::array();
  for (std::size_t t = 0; t < r.trajectory.rounds.size(); ++t) {
    const auto& rec = r.trajectory.rounds[t];
    json jr;
    jr["round"] = rec.round;
    std::vector<int> actions;
    for (ActionId a : rec.actions) actions.push_back(a.value);
    jr["actions"] = actions;
    json beliefs = json::array();
    for (const auto& b : rec.beliefs) {
      json jb = {{"type", b.gaussian ? "gaussian" : "categorical"}, {"mean", to_std(b.mean)}, {"cov_trace", b.cov_trace}};
      if (!b.gaussian) jb["probs"] = b.probs;
      beliefs.push_back(jb);
    }
    jr["beliefs"] = beliefs;
    json tv = json::array();
    for (double x : rec.tv_to_reference) tv.push_back(number_or_null(x));
    jr["tv_to_reference"] = tv;
    json hist = json::array();
    for (const auto& h : rec.histograms) hist.push_back(std::vector<double>(h.probs().begin(), h.probs().end()));
    jr["histograms"] = hist;
    jr["track_err_centroid"] = number_or_null(rec.track_err_centroid);
    jr["track_err_pairwise"] = number_or_null(rec.track_err_pairwise);
    jr["positions"] = points_json(rec.positions);
    jr["beta_t"] = t < r.beta.beta.size() ? number_or_null(r.beta.beta[t]) : json(nullptr);
    jr["beta_cesaro"] = t < r.beta.cesaro.size() ? number_or_null(r.beta.cesaro[t]) : json(nullptr);
    rounds.push_back(std::move(jr));
  }
  j["rounds"] = std::move(rounds);
  return j.dump(1) + "\n";
}

RunResult trajectory_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    RunResult r;
    r.scenario = parse_scenario(j.at("scenario").dump());
    r.fingerprint = j.at("fingerprint").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.trajectory.variant = variant_from_string(j.at("variant").get<std::string>());
    r.trajectory.agents = j.at("agents").get<int>();
    r.trajectory.actions = j.at("actions").get<int>();
    r.action_values = j.at("action_values").get<std::vector<double>>();
    r.trajectory.termination = j.at("termination").get<std::string>();
    r.trajectory.converged_round = optional_from<int>(j.at("converged_round"));
    r.graph_draws = j.at("graph_draws").get<int>();
    r.rewire_draws = j.at("rewire_draws").get<int>();
    r.diameter = j.at("diameter").is_null() ? std::numeric_limits<double>::infinity() : j.at("diameter").get<double>();
    r.mean_path = j.at("mean_path").is_null() ? std::numeric_limits<double>::infinity() : j.at("mean_path").get<double>();
    r.pooled_signal_mean = j.at("pooled_signal_mean").get<std::vector<double>>();
    r.consensus_value = optional_from<double>(j.at("consensus_value"));
    r.covered = j.at("covered").get<bool>();
    r.final_objective = optional_from<double>(j.at("final_objective"));
    r.final_assignment = j.at("final_assignment").get<std::vector<int>>();
    r.baseline_assignment = j.at("baseline_assignment").get<std::vector<int>>();
    r.baseline_objective = optional_from<double>(j.at("baseline_objective"));
    for (const auto& jr : j.at("rounds")) {
      RoundRecord rec;
      rec.round = jr.at("round").get<int>();
      for (int a : jr.at("actions").get<std::vector<int>>()) rec.actions.push_back(ActionId{a});
      for (const auto& jb : jr.at("beliefs")) {
        BeliefSummary b;
        b.gaussian = jb.at("type").get<std::string>() == "gaussian";
        const auto mean = jb.at("mean").get<std::vector<double>>();
        b.mean = Eigen::Map<const Eigen::VectorXd>(mean.data(), static_cast<Eigen::Index>(mean.size()));
        b.cov_trace = jb.at("cov_trace").get<double>();
        if (!b.gaussian) b.probs = jb.at("probs").get<std::vector<double>>();
        rec.beliefs.push_back(std::move(b));
      }
      for (const auto& x : jr.at("tv_to_reference")) rec.tv_to_reference.push_back(number_from(x));
      for (const auto& h : jr.at("histograms")) rec.histograms.emplace_back(h.get<std::vector<double>>());
      rec.track_err_centroid = number_from(jr.at("track_err_centroid"));
      rec.track_err_pairwise = number_from(jr.at("track_err_pairwise"));
      for (const auto& p : jr.at("positions")) rec.positions.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
      r.beta.beta.push_back(number_from(jr.at("beta_t")));
      r.beta.cesaro.push_back(number_from(jr.at("beta_cesaro")));
      r.trajectory.rounds.push_back(std::move(rec));
    }
    return r;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed trajectory JSON: ") + e.what());
  }
}

std::string summary_to_json(const BatchSummary& s) {
  json j;
  j["name"] = s.name;
  j["fingerprint"] = s.fingerprint;
  j["horizon"] = s.horizon;
  j["runs"] = s.runs;
  j["converged"] = s.converged;
  j["failures"] = s.failures;
  j["errors"] = s.errors;
  j["mean_convergence"] = s.mean_convergence;
  j["median_convergence"] = s.median_convergence;
  j["mean_convergence_converged"] = optional_json(s.mean_convergence_converged);
  j["mean_diameter"] = number_or_null(s.mean_diameter);
  j["mean_path"] = number_or_null(s.mean_path);
  j["mean_final_objective"] = optional_json(s.mean_final_objective);
  j["fraction_baseline"] = optional_json(s.fraction_baseline);
  json seeds = json::array();
  for (const auto& o : s.seeds) seeds.push_back(seed_json(o));
  j["seeds"] = std::move(seeds);
  return j.dump(2) + "\n";
}

BatchSummary summary_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    BatchSummary s;
    s.name = j.at("name").get<std::string>();
    s.fingerprint = j.at("fingerprint").get<std::string>();
    s.horizon = j.at("horizon").get<int>();
    s.runs = j.at("runs").get<int>();
    s.converged = j.at("converged").get<int>();
    s.failures = j.at("failures").get<int>();
    s.errors = j.at("errors").get<int>();
    s.mean_convergence = j.at("mean_convergence").get<double>();
    s.median_convergence = j.at("median_convergence").get<double>();
    s.mean_convergence_converged = optional_from<double>(j.at("mean_convergence_converged"));
    s.mean_diameter = number_from(j.at("mean_diameter"));
    s.mean_path = number_from(j.at("mean_path"));
    s.mean_final_objective = optional_from<double>(j.at("mean_final_objective"));
    s.fraction_baseline = optional_from<double>(j.at("fraction_baseline"));
    for (const auto& o : j.at("seeds")) s.seeds.push_back(seed_from(o));
    return s;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed summary JSON: ") + e.what());
  }
}

std::vector<std::filesystem::path> emit(const RunResult& r, const std::filesystem::path& dir, std::string_view format) {
  if (format != "csv" && format != "json") throw ConfigError("format: expected csv or json");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ResourceError("cannot create " + dir.string() + ": " + ec.message());
  std::vector<std::filesystem::path> written;
  if (format == "csv") {
    std::ostringstream csv;
    write_trajectory_csv(r, csv);
    written.push_back(dir / "trajectory.csv");
    write_file(written.back(), csv.str());
  } else {
    written.push_back(dir / "trajectory.json");
    write_file(written.back(), trajectory_to_json(r));
  }
  if (has_positions(r)) {
    std::ostringstream pos;
    write_positions_csv(r, pos);
    written.push_back(dir / "positions.csv");
    write_file(written.back(), pos.str());
  }
  return written;
}

std::vector<std::filesystem::path> emit(const BatchSummary& s, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ResourceError("cannot create " + dir.string() + ": " + ec.message());
  const auto path = dir / "summary.json";
  write_file(path, summary_to_json(s));
  return {path};
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ResourceError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace netfp
