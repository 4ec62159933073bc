// Python module netfp._core: scenario runs, batches, baselines, checks and the
// two benchmark games.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "netfp/errors.hpp"
#include "netfp/harness.hpp"

namespace py = pybind11;
using namespace netfp;

namespace {

std::vector<ActionId> actions_from(const std::vector<int>& a) {
  std::vector<ActionId> out;
  for (int x : a) out.push_back(ActionId{x});
  return out;
}

Positions points_from(const std::vector<std::pair<double, double>>& p) {
  Positions out;
  for (const auto& [x, y] : p) out.emplace_back(x, y);
  return out;
}

TargetCoverSpec cover_spec(const std::vector<std::pair<double, double>>& targets,
                           const std::vector<std::pair<double, double>>& robots) {
  TargetCoverSpec s;
  s.targets = points_from(targets);
  s.robots = points_from(robots);
  validate(s);
  return s;
}

BeautyContestSpec beauty_spec(double lambda, const std::vector<double>& grid, int n) {
  BeautyContestSpec s;
  s.lambda = lambda;
  s.grid = grid;
  s.n = n;
  validate(s);
  return s;
}

std::string csv_of(const RunResult& r) {
  std::ostringstream out;
  write_trajectory_csv(r, out);
  return out.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Distributed fictitious play in networked games with state uncertainty";

  static py::exception<ConfigError> config_error(m, "ConfigError", PyExc_ValueError);
  static py::exception<DomainError> domain_error(m, "DomainError", PyExc_ValueError);
  static py::exception<ResourceError> resource_error(m, "ResourceError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ConfigError& e) {
      py::set_error(config_error, e.what());
    } catch (const DomainError& e) {
      py::set_error(domain_error, e.what());
    } catch (const ResourceError& e) {
      py::set_error(resource_error, e.what());
    }
  });

  py::class_<Scenario>(m, "Scenario")
      .def_readonly("name", &Scenario::name)
      .def_readonly("game", &Scenario::game)
      .def_readwrite("horizon", &Scenario::horizon)
      .def_readwrite("seed", &Scenario::seed)
      .def_readonly("warnings", &Scenario::warnings)
      .def_property_readonly("agents", [](const Scenario& s) { return s.graph.n; })
      .def_property_readonly("variant", [](const Scenario& s) { return std::string(to_string(s.variant)); })
      .def("to_json", &scenario_to_json)
      .def("fingerprint", &scenario_fingerprint)
      .def("__repr__", [](const Scenario& s) { return "<Scenario " + s.name + " (" + s.game + ")>"; });

  m.def("load_scenario", [](const std::string& path) { return load_scenario(path); }, py::arg("path"));
  m.def("parse_scenario", [](const std::string& text) { return parse_scenario(text); }, py::arg("text"));

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("seed", &RunResult::seed)
      .def_readonly("fingerprint", &RunResult::fingerprint)
      .def_property_readonly("termination", [](const RunResult& r) { return r.trajectory.termination; })
      .def_property_readonly("rounds", [](const RunResult& r) { return r.trajectory.rounds.size(); })
      .def_property_readonly("converged_round", [](const RunResult& r) { return r.trajectory.converged_round; })
      .def_property_readonly("actions",
                             [](const RunResult& r) {
                               std::vector<std::vector<int>> out;
                               for (const auto& rec : r.trajectory.rounds) {
                                 std::vector<int> row;
                                 for (const auto& a : rec.actions) row.push_back(a.value);
                                 out.push_back(std::move(row));
                               }
                               return out;
                             })
      .def_property_readonly("beta", [](const RunResult& r) { return r.beta.beta; })
      .def_property_readonly("beta_cesaro", [](const RunResult& r) { return r.beta.cesaro; })
      .def_readonly("action_values", &RunResult::action_values)
      .def_readonly("pooled_signal_mean", &RunResult::pooled_signal_mean)
      .def_readonly("consensus_value", &RunResult::consensus_value)
      .def_readonly("covered", &RunResult::covered)
      .def_readonly("final_objective", &RunResult::final_objective)
      .def_readonly("final_assignment", &RunResult::final_assignment)
      .def_readonly("baseline_assignment", &RunResult::baseline_assignment)
      .def_readonly("diameter", &RunResult::diameter)
      .def_readonly("mean_path", &RunResult::mean_path)
      .def("to_json", &trajectory_to_json)
      .def("to_csv", &csv_of)
      .def("emit", [](const RunResult& r, const std::string& dir, const std::string& format) {
        std::vector<std::string> out;
        for (const auto& p : emit(r, dir, format)) out.push_back(p.string());
        return out;
      }, py::arg("out_dir"), py::arg("format") = "csv");

  m.def("run", [](const Scenario& s, std::optional<std::uint64_t> seed) {
    py::gil_scoped_release release;
    return run_single(s, seed);
  }, py::arg("scenario"), py::arg("seed") = py::none());

  m.def("run_batch_json", [](const Scenario& s, const std::vector<std::uint64_t>& seeds, int parallel) {
    py::gil_scoped_release release;
    return summary_to_json(run_batch(s, seeds, parallel));
  }, py::arg("scenario"), py::arg("seeds"), py::arg("parallel") = 1);

  m.def("baseline", [](const Scenario& s, std::optional<std::uint64_t> seed) {
    const BaselineResult b = centralized_baseline(s, seed.value_or(s.seed));
    return py::dict(py::arg("assignment") = b.assignment, py::arg("believed_objective") = b.believed_objective,
                    py::arg("true_objective") = b.true_objective);
  }, py::arg("scenario"), py::arg("seed") = py::none());

  m.def("verify", [](const Scenario& s, int samples, std::uint64_t seed) {
    py::list out;
    for (const auto& c : verify_scenario(s, samples, seed).checks) {
      out.append(py::dict(py::arg("name") = c.name, py::arg("expected") = c.expected,
                          py::arg("observed") = c.observed, py::arg("note") = c.note));
    }
    return out;
  }, py::arg("scenario"), py::arg("samples") = 10000, py::arg("seed") = 1);

  m.def("beauty_payoff", [](double lambda, const std::vector<double>& grid, const std::vector<int>& actions,
                            double theta) {
    const auto a = actions_from(actions);
    return beauty_payoff(beauty_spec(lambda, grid, static_cast<int>(a.size())), a, theta);
  }, py::arg("lam"), py::arg("grid"), py::arg("actions"), py::arg("theta"),
        "Per-agent utilities; actions are 1-based grid indices.");

  m.def("cover_payoff", [](const std::vector<std::pair<double, double>>& targets,
                           const std::vector<std::pair<double, double>>& robots, const std::vector<int>& actions) {
    const auto spec = cover_spec(targets, robots);
    return cover_payoff(spec, actions_from(actions), stack_positions(spec.targets));
  }, py::arg("targets"), py::arg("robots"), py::arg("actions"), "Per-robot utilities; actions are 1-based target ids.");

  m.def("cover_objective", [](const std::vector<std::pair<double, double>>& targets,
                              const std::vector<std::pair<double, double>>& robots, const std::vector<int>& actions) {
    const auto spec = cover_spec(targets, robots);
    return cover_global_objective(spec, actions_from(actions), stack_positions(spec.targets));
  }, py::arg("targets"), py::arg("robots"), py::arg("actions"));

  m.def("cover_assignment", [](const std::vector<std::pair<double, double>>& targets,
                               const std::vector<std::pair<double, double>>& robots) {
    const auto spec = cover_spec(targets, robots);
    return centralized_baseline(spec, spec.targets).assignment;
  }, py::arg("targets"), py::arg("robots"), "Objective-maximizing one-to-one assignment.");

  m.def("path_stats", [](int n, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::pair<int, int>> zero;
    for (const auto& [a, b] : edges) zero.emplace_back(a - 1, b - 1);
    const PathStats s = diameter_and_mean_path(Graph::from_edges(n, zero, true));
    return py::make_tuple(s.diameter, s.mean_path);
  }, py::arg("n"), py::arg("edges"), "Diameter and mean path length of an undirected graph with 1-based edges.");

  m.attr("TRAJECTORY_CSV_HEADER") = std::string(kTrajectoryCsvHeader);
}
