// Command line front end: run, batch, baseline, verify.

#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "netfp/errors.hpp"
#include "netfp/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;
constexpr int kExitVerify = 3;

std::vector<std::uint64_t> parse_seed_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) return {std::stoull(text)};
    const std::uint64_t lo = std::stoull(text.substr(0, dots));
    const std::uint64_t hi = std::stoull(text.substr(dots + 2));
    if (hi < lo) throw netfp::ConfigError("seeds: range end precedes its start");
    std::vector<std::uint64_t> out;
    for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
    return out;
  } catch (const std::invalid_argument&) {
    throw netfp::ConfigError("seeds: expected N or N..M, got '" + text + "'");
  } catch (const std::out_of_range&) {
    throw netfp::ConfigError("seeds: value out of range in '" + text + "'");
  }
}

netfp::Scenario load(const std::string& path, std::optional<int> horizon) {
  netfp::Scenario s = netfp::load_scenario(path);
  if (horizon) {
    s.horizon = *horizon;
    netfp::validate(s);
  }
  for (const auto& w : s.warnings) std::cerr << "warning: " << w << "\n";
  return s;
}

std::string fmt_opt(const std::optional<double>& v) {
  if (!v) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", *v);
  return buf;
}

std::string join(const std::vector<int>& v) {
  std::string out = "[";
  for (std::size_t k = 0; k < v.size(); ++k) out += (k ? "," : "") + std::to_string(v[k]);
  return out + "]";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Distributed fictitious play simulator"};
  app.require_subcommand(1);

  std::string scenario_path;
  std::optional<std::uint64_t> seed;
  std::string seeds_text;
  std::string out_dir;
  std::string format = "csv";
  int parallel = 1;
  std::optional<int> horizon;
  int samples = 10000;

  auto* run_cmd = app.add_subcommand("run", "Run one seeded trajectory and write it out");
  run_cmd->add_option("--scenario", scenario_path, "Scenario JSON")->required();
  run_cmd->add_option("--seed", seed, "Seed override");
  run_cmd->add_option("--horizon", horizon, "Horizon override");
  run_cmd->add_option("--out", out_dir, "Output directory")->required();
  run_cmd->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* batch_cmd = app.add_subcommand("batch", "Run many seeds and summarize");
  batch_cmd->add_option("--scenario", scenario_path, "Scenario JSON")->required();
  batch_cmd->add_option("--seeds", seeds_text, "Seed range N..M (inclusive)")->required();
  batch_cmd->add_option("--parallel", parallel, "Worker threads")->check(CLI::PositiveNumber);
  batch_cmd->add_option("--horizon", horizon, "Horizon override");
  batch_cmd->add_option("--out", out_dir, "Output directory")->required();

  auto* base_cmd = app.add_subcommand("baseline", "Centralized assignment from pooled signals (cover)");
  base_cmd->add_option("--scenario", scenario_path, "Scenario JSON")->required();
  base_cmd->add_option("--seed", seed, "Seed override");

  auto* verify_cmd = app.add_subcommand("verify", "Symmetry, potential and oracle checks");
  verify_cmd->add_option("--scenario", scenario_path, "Scenario JSON")->required();
  verify_cmd->add_option("--seed", seed, "Seed for the random checks");
  verify_cmd->add_option("--samples", samples, "Samples per check")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (run_cmd->parsed()) {
      const netfp::Scenario s = load(scenario_path, horizon);
      const netfp::RunResult r = netfp::run_single(s, seed);
      const auto files = netfp::emit(r, out_dir, format);
      std::cout << "scenario " << s.name << " seed " << r.seed << ": " << r.trajectory.termination << " after "
                << r.trajectory.rounds.size() << " rounds\n";
      if (r.consensus_value) std::cout << "consensus action " << *r.consensus_value << "\n";
      if (r.final_objective) {
        std::cout << "final assignment " << join(r.final_assignment) << " objective " << fmt_opt(r.final_objective)
                  << (r.covered ? " (all targets covered)" : "") << "\n";
      }
      for (const auto& f : files) std::cout << "wrote " << f.string() << "\n";
    } else if (batch_cmd->parsed()) {
      const netfp::Scenario s = load(scenario_path, horizon);
      const auto seeds = parse_seed_range(seeds_text);
      const netfp::BatchSummary b = netfp::run_batch(s, seeds, parallel);
      const auto files = netfp::emit(b, out_dir);
      std::cout << "scenario " << b.name << ": " << b.runs << " runs, " << b.converged << " converged, " << b.failures
                << " hit the horizon, " << b.errors << " errors\n";
      std::cout << "mean convergence " << fmt_opt(b.mean_convergence) << " (failures at horizon), median "
                << fmt_opt(b.median_convergence) << ", converged-only " << fmt_opt(b.mean_convergence_converged)
                << "\n";
      if (b.fraction_baseline) {
        std::cout << "mean final objective " << fmt_opt(b.mean_final_objective) << ", baseline match fraction "
                  << fmt_opt(b.fraction_baseline) << "\n";
      }
      for (const auto& f : files) std::cout << "wrote " << f.string() << "\n";
    } else if (base_cmd->parsed()) {
      const netfp::Scenario s = load(scenario_path, std::nullopt);
      const netfp::BaselineResult b = netfp::centralized_baseline(s, seed.value_or(s.seed));
      std::cout << "assignment " << join(b.assignment) << " believed objective " << fmt_opt(b.believed_objective)
                << " true objective " << fmt_opt(b.true_objective) << "\n";
    } else if (verify_cmd->parsed()) {
      const netfp::Scenario s = load(scenario_path, std::nullopt);
      const netfp::VerifyReport rep = netfp::verify_scenario(s, samples, seed.value_or(s.seed));
      for (const auto& c : rep.checks) {
        std::cout << (c.expected == c.observed ? "ok   " : "FAIL ") << c.name << ": expected "
                  << (c.expected ? "true" : "false") << ", observed " << (c.observed ? "true" : "false");
        if (!c.note.empty()) std::cout << " (" << c.note << ")";
        std::cout << "\n";
      }
      return rep.ok() ? kExitOk : kExitVerify;
    }
  } catch (const netfp::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}
