// _delib: the main operations over JSON text. The `delib` package wraps these
// with dict-returning helpers.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "delib/errors.hpp"
#include "delib/scenario_io.hpp"

namespace py = pybind11;
using namespace delib;

namespace {

PyObject* g_error = nullptr;

std::vector<TransitionKind> kinds_of(const std::vector<std::string>& names) {
  if (names.empty()) return {std::begin(kAllKinds), std::end(kAllKinds)};
  std::vector<TransitionKind> out;
  for (const auto& n : names) {
    auto k = parse_kind(n);
    if (!k) throw Error(ErrorKind::usage, "unknown transition kind '" + n + "'", "kinds");
    out.push_back(*k);
  }
  return out;
}

std::vector<Point> points_of(const std::vector<std::vector<double>>& rows) {
  std::vector<Point> out;
  for (const auto& r : rows) out.push_back(Point{r});
  return out;
}

}  // namespace

PYBIND11_MODULE(_delib, m) {
  m.doc() = "Deliberation dynamics in metric spaces (native core)";

  g_error = PyErr_NewException("delib._delib.DelibError", PyExc_RuntimeError, nullptr);
  m.attr("DelibError") = py::handle(g_error);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(g_error)(e.what());
      exc.attr("kind") = std::string(to_string(e.kind()));
      exc.attr("field") = e.field();
      exc.attr("clause") = e.clause();
      PyErr_SetObject(g_error, exc.ptr());
    }
  });

  m.attr("FORMAT_VERSION") = kFormatVersion;

  m.def("fixture_names", &fixture_names);
  m.def("fixture", [](const std::string& name) { return write_scenario(builtin_fixture(name)); },
        py::arg("name"), "Scenario JSON of a built-in example.");
  m.def("normalize_scenario", [](const std::string& text) { return write_scenario(load_scenario(text)); },
        py::arg("scenario"), "Validate scenario JSON and return its canonical form.");

  m.def(
      "run",
      [](const std::string& scenario, const std::string& policy, std::uint64_t seed,
         std::optional<std::size_t> step_cap, const std::string& selector) {
        const auto sc = load_scenario(scenario);
        auto sel = parse_selector(selector);
        if (!sel) throw Error(ErrorKind::usage, "unknown selector '" + selector + "'", "selector");
        py::gil_scoped_release release;
        const auto trace = run(sc.space, sc.initial, Policy::parse(policy, *sel, seed), step_cap);
        return write_trace(trace, sc.space);
      },
      py::arg("scenario"), py::arg("policy"), py::arg("seed") = 0, py::arg("step_cap") = std::nullopt,
      py::arg("selector") = "uniform_random", "Run one maximal deliberation; returns the trace JSON.");

  m.def(
      "transitions",
      [](const std::string& scenario, const std::vector<std::string>& kinds) {
        const auto sc = load_scenario(scenario);
        nlohmann::json out = nlohmann::json::object();
        for (auto kind : kinds_of(kinds)) {
          auto list = nlohmann::json::array();
          for (const auto& t : enumerate(kind, sc.initial, sc.space)) list.push_back(describe(t, sc.initial, sc.space));
          out[std::string(to_string(kind))] = list;
        }
        return out.dump();
      },
      py::arg("scenario"), py::arg("kinds") = std::vector<std::string>{},
      "Transitions available from the initial structure, per kind.");

  m.def(
      "max_support",
      [](const std::string& scenario) {
        const auto sc = load_scenario(scenario);
        return write_support_report(max_support(sc.space), sc.space);
      },
      py::arg("scenario"));

  m.def(
      "explore",
      [](const std::string& scenario, const std::vector<std::string>& kinds, std::size_t state_cap, bool cross_check,
         std::size_t agent_cap) {
        const auto sc = load_scenario(scenario);
        const auto ks = kinds_of(kinds);
        py::gil_scoped_release release;
        const auto rep = explore(sc.space, sc.initial, ks, {state_cap, cross_check, agent_cap});
        return write_explore_report(rep, sc.space);
      },
      py::arg("scenario"), py::arg("kinds") = std::vector<std::string>{}, py::arg("state_cap") = kDefaultStateCap,
      py::arg("cross_check") = false, py::arg("agent_cap") = kExploreAgentCap);

  m.def(
      "batch",
      [](const std::string& generator, const std::vector<std::string>& policies, std::uint64_t first,
         std::uint64_t last, unsigned threads) {
        const auto cfg = load_generator_config(generator);
        std::vector<Policy> ps;
        for (const auto& p : policies) ps.push_back(Policy::parse(p));
        py::gil_scoped_release release;
        return write_summary(batch(cfg, ps, first, last, threads));
      },
      py::arg("generator"), py::arg("policies"), py::arg("first_seed"), py::arg("last_seed"),
      py::arg("threads") = 0u, "Summary CSV of one run per (seed, policy).");

  m.def(
      "generate",
      [](const std::string& generator, std::uint64_t seed) {
        return write_scenario(generate_scenario(load_generator_config(generator), seed));
      },
      py::arg("generator"), py::arg("seed"));

  m.def(
      "best_common_proposal",
      [](const std::vector<std::vector<double>>& agents, const std::vector<double>& status_quo) {
        const auto pts = points_of(agents);
        const auto res = best_common_proposal(pts, Point{status_quo});
        py::dict d;
        d["witness"] = res.witness.coords;
        d["margin"] = res.margin;
        d["lower_bound"] = res.lower_bound;
        d["hull_distance"] = res.hull_distance;
        d["feasible"] = res.feasible();
        return d;
      },
      py::arg("agents"), py::arg("status_quo"));

  m.def(
      "separated_proposal",
      [](const std::vector<std::vector<double>>& agents,
         const std::vector<double>& status_quo) -> std::optional<std::vector<double>> {
        const auto pts = points_of(agents);
        if (auto q = separated_proposal(pts, Point{status_quo})) return q->coords;
        return std::nullopt;
      },
      py::arg("agents"), py::arg("status_quo"));
}
