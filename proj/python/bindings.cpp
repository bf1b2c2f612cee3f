#include <memory>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fglab/cocycle.hpp"
#include "fglab/error.hpp"
#include "fglab/io.hpp"
#include "fglab/recurrence_probe.hpp"
#include "fglab/verify.hpp"

namespace py = pybind11;
using namespace fglab;

namespace {

using ActionPtr = FullGroupElement::ActionPtr;

ActionPtr load(const std::string& name, const std::string& basepoint) {
  ActionSystem a = load_action(name);
  if (!basepoint.empty()) a = a.with_basepoint(BoundaryPoint::parse(basepoint));
  return std::make_shared<const ActionSystem>(std::move(a));
}

std::vector<FullGroupElement> family(const ActionPtr& action, const std::string& f_json) {
  if (f_json.empty()) return default_family(action);
  return elements_from_json(action, Json::parse(f_json));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Finite-window experiments on Schreier graphs of Cantor actions";
  m.attr("__version__") = FGLAB_VERSION;

  static py::exception<Error> error(m, "FglabError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      error(e.what());
    } catch (const nlohmann::json::exception& e) {
      error(e.what());
    }
  });

  m.def("builtin_actions", &builtin_action_names);

  m.def(
      "canonical_point",
      [](const std::string& pre, const std::string& period) { return canonical_point(pre, period).to_string(); },
      py::arg("preperiod"), py::arg("period"));

  m.def(
      "apply_word",
      [](const std::string& action, const std::string& word, const std::string& point) {
        const ActionSystem a = load_action(action);
        return a.apply(GroupWord::parse(word), BoundaryPoint::parse(point)).to_string();
      },
      py::arg("action"), py::arg("word"), py::arg("point"),
      "Apply a whitespace separated word (rightmost letter first) to a point written pre(period).");

  m.def(
      "ball",
      [](const std::string& action, std::size_t radius, const std::string& basepoint) {
        const SchreierBall b = build_ball(*load(action, basepoint), radius);
        return graph_to_json(b.graph).dump();
      },
      py::arg("action"), py::arg("radius"), py::arg("basepoint") = "");

  m.def(
      "level_graph",
      [](const std::string& action, std::size_t level) {
        return graph_to_json(build_level_graph(load_action(action), level).graph).dump();
      },
      py::arg("action"), py::arg("level"));

  m.def(
      "line_chart",
      [](const std::string& action, std::size_t radius, std::size_t level, const std::string& basepoint) {
        FiniteGraph g = level > 0 ? build_level_graph(*load(action, basepoint), level).graph
                                  : build_ball(*load(action, basepoint), radius).graph;
        const LineChart c = fit_line_chart(g);
        py::dict out;
        out["alpha"] = to_string(c.alpha);
        out["beta"] = to_string(c.beta);
        out["gamma"] = to_string(c.gamma);
        out["m"] = to_string(c.m);
        out["f"] = c.f;
        return out;
      },
      py::arg("action"), py::arg("radius") = 50, py::arg("level") = 0, py::arg("basepoint") = "");

  m.def(
      "cocycle",
      [](const std::string& action, const std::string& element_json, std::size_t radius) {
        const ActionPtr a = load(action, "");
        const FullGroupElement phi = element_from_json(a, Json::parse(element_json));
        const SchreierBall b = build_ball(*a, radius);
        const HalfSpace y = half_space(b.graph, fit_line_chart(b.graph));
        std::vector<std::string> pts;
        for (const auto& p : cocycle_value(phi, y, b).points) pts.push_back(p.to_string());
        return pts;
      },
      py::arg("action"), py::arg("element_json"), py::arg("radius") = 60);

  m.def(
      "escape_probabilities",
      [](const std::string& action, const std::vector<std::size_t>& radii, const std::string& basepoint) {
        std::size_t top = 0;
        for (auto r : radii) top = std::max(top, r);
        const SchreierBall b = build_ball(*load(action, basepoint), top);
        std::vector<std::string> out;
        for (const auto& p : escape_series(b.graph, radii)) out.push_back(to_string(p.probability));
        return out;
      },
      py::arg("action"), py::arg("radii"), py::arg("basepoint") = "",
      "Exact escape probabilities as strings p/q.");

  m.def(
      "verify",
      [](const std::string& action, std::size_t radius, std::size_t n, const std::string& f_json,
         const std::string& basepoint) {
        const ActionPtr a = load(action, basepoint);
        VerifyOptions opt;
        opt.radius = radius;
        opt.n = n;
        VerificationReport r;
        {
          py::gil_scoped_release release;
          r = run_verification(a, family(a, f_json), opt);
        }
        return r.json.dump();
      },
      py::arg("action"), py::arg("radius") = 200, py::arg("n") = 10, py::arg("F") = "", py::arg("basepoint") = "",
      "Run every lemma check; returns the JSON report as a string.");
}
