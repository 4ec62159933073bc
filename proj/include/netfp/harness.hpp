#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "netfp/engine.hpp"
#include "netfp/equilibria.hpp"
#include "netfp/games.hpp"
#include "netfp/graph.hpp"

namespace netfp {

struct GraphConfig {
  std::string type = "geometric";  // geometric | star | ring | path | complete | explicit
  int n = 0;
  double side = 1.0;
  double radius = 0.3;
  std::optional<double> rewire;  // small-world rewiring of the geometric draw
  int hub = 1;                   // star center, 1-based
  std::vector<std::pair<int, int>> edges;  // explicit, 1-based
  bool directed = false;
};

struct LearningConfig {
  std::string type = "averaging";           // averaging | bayes | static
  std::string representation = "gaussian";  // beauty only: gaussian | categorical
};

struct StopConfig {
  std::string type = "none";  // none | consensus | coverage
  int window = 10;
};

struct Scenario {
  std::string name = "scenario";
  std::string game;  // beauty | cover
  BeautyContestSpec beauty;
  double movement_step = 0.0;  // beauty: displacement per round, 0 disables positions
  TargetCoverSpec cover;
  GraphConfig graph;
  LearningConfig learning;
  Variant variant = Variant::kActionSharing;
  int horizon = 500;
  StopConfig stop;
  std::uint64_t seed = 1;
  std::vector<std::string> warnings;  // filled by validation
};

// Strict loading: unknown keys, wrong types and out-of-range values raise
// ConfigError naming the offending field.
Scenario load_scenario(const std::filesystem::path& path);
Scenario parse_scenario(std::string_view json_text);
void validate(Scenario& scenario);
std::string scenario_to_json(const Scenario& scenario);
// FNV-1a over the canonical JSON of the scenario, hex encoded.
std::string scenario_fingerprint(const Scenario& scenario);

// Independent generator seed for one purpose of one run.
enum class Stream : std::uint32_t { kGraph = 1, kRewire = 2, kSignals = 3, kLearning = 4 };
std::uint64_t derive_seed(std::uint64_t seed, Stream stream);

// Everything a run needs that is drawn at random.
struct Realization {
  GameSpec game;
  Graph graph;
  Positions node_positions;  // geometric draws only
  int graph_draws = 1;       // geometric draws until connected
  int rewire_draws = 0;      // rewiring attempts until connected
  std::shared_ptr<StateLearning> learning;
  std::vector<Eigen::VectorXd> signals;  // initial private signals
  Eigen::VectorXd pooled_signal_mean;
};

Realization realize(const Scenario& scenario, std::uint64_t seed);

struct BaselineResult {
  std::vector<int> assignment;  // 1-based target per robot
  double believed_objective = 0.0;  // at the positions it was computed from
  double true_objective = 0.0;      // at the true target positions
};

// Argmax over permutation assignments of sum_i h(x_i, target_{a_i}). Ties go to
// the lexicographically first permutation. ResourceError for n > 8.
BaselineResult centralized_baseline(const TargetCoverSpec& spec, const Positions& believed_targets);
// Pools every agent's initial signal for `seed` into one posterior.
BaselineResult centralized_baseline(const Scenario& scenario, std::uint64_t seed);

struct RunResult {
  Scenario scenario;
  std::uint64_t seed = 0;
  std::string fingerprint;
  Trajectory trajectory;
  BetaSeries beta;
  std::vector<double> action_values;
  int graph_draws = 1;
  int rewire_draws = 0;
  double diameter = 0.0;
  double mean_path = 0.0;
  std::vector<double> pooled_signal_mean;
  std::optional<double> consensus_value;  // action value agents settled on
  // cover only
  bool covered = false;
  std::optional<double> final_objective;  // final joint action at the true targets
  std::vector<int> final_assignment;
  std::vector<int> baseline_assignment;  // from the final pooled posterior
  std::optional<double> baseline_objective;
};

RunResult run_single(const Scenario& scenario, std::optional<std::uint64_t> seed = std::nullopt);

struct SeedOutcome {
  std::uint64_t seed = 0;
  std::string error;  // empty on success
  std::string termination;
  int rounds = 0;
  std::optional<int> converged_round;
  double convergence_time = 0.0;  // converged round, or the horizon on failure
  std::optional<double> consensus_value;
  std::vector<double> pooled_signal_mean;
  std::optional<double> final_objective;
  std::vector<int> final_assignment;
  std::vector<int> baseline_assignment;
  bool matches_baseline = false;
  int graph_draws = 1;
  int rewire_draws = 0;
  double diameter = 0.0;
  double mean_path = 0.0;
  double beta_cesaro = 0.0;
};

struct BatchSummary {
  std::string name;
  std::string fingerprint;
  int horizon = 0;
  int runs = 0;
  int converged = 0;
  int failures = 0;  // reached the horizon
  int errors = 0;    // threw
  double mean_convergence = 0.0;  // failures counted at the horizon
  double median_convergence = 0.0;
  std::optional<double> mean_convergence_converged;
  double mean_diameter = 0.0;
  double mean_path = 0.0;
  std::optional<double> mean_final_objective;
  std::optional<double> fraction_baseline;
  std::vector<SeedOutcome> seeds;
};

SeedOutcome outcome_of(const RunResult& r);
// Recomputes every aggregate from the per-seed rows.
BatchSummary aggregate(std::string name, std::string fingerprint, int horizon, std::vector<SeedOutcome> seeds);
// Seeds run concurrently on `parallelism` threads; per-seed errors are
// recorded, not thrown. ConfigError for an empty seed list.
BatchSummary run_batch(const Scenario& scenario, std::span<const std::uint64_t> seeds, int parallelism = 1);

struct CheckOutcome {
  std::string name;
  bool expected = true;
  bool observed = true;
  std::string note;
};

struct VerifyReport {
  std::vector<CheckOutcome> checks;
  bool ok() const;
};

// Symmetry, four-cycle potential test and closed form vs brute-force
// enumeration for the scenario's game. Oracle checks fall back to a reduced
// instance of the same game when full enumeration exceeds the cap.
VerifyReport verify_scenario(const Scenario& scenario, int samples, std::uint64_t seed);

// ---- emission ---------------------------------------------------------------

inline constexpr std::string_view kTrajectoryCsvHeader =
    "round,agent,action_index,action_value,belief_mean,tv_to_reference,track_err_centroid,track_err_pairwise,beta_t,"
    "beta_cesaro";

void write_trajectory_csv(const RunResult& r, std::ostream& out);
void write_positions_csv(const RunResult& r, std::ostream& out);
bool has_positions(const RunResult& r);
std::string trajectory_to_json(const RunResult& r);
RunResult trajectory_from_json(std::string_view text);
std::string summary_to_json(const BatchSummary& s);
BatchSummary summary_from_json(std::string_view text);

// Writes trajectory.csv / trajectory.json (and positions.csv when present) into
// `dir`; returns the written paths. ResourceError on I/O failure.
std::vector<std::filesystem::path> emit(const RunResult& r, const std::filesystem::path& dir, std::string_view format);
std::vector<std::filesystem::path> emit(const BatchSummary& s, const std::filesystem::path& dir);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace netfp
