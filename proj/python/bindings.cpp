#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "delkit/error.hpp"
#include "delkit/gen.hpp"
#include "delkit/kripke.hpp"
#include "delkit/mcheck.hpp"
#include "delkit/model_json.hpp"
#include "delkit/parser.hpp"
#include "delkit/reduce.hpp"
#include "delkit/tableau.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

// Event models arrive as one JSON array, in dependency order.
delkit::EventEnv load_events(const std::string& events) {
  delkit::EventEnv env;
  json j = json::parse(events);
  if (j.is_object()) j = json::array({j});
  for (const auto& e : j) {
    auto loaded = delkit::event_model_from_json(e, env);
    env[loaded.model->name()] = loaded.model;
  }
  return env;
}

delkit::PointedModel load_model(const std::string& model, const std::optional<std::string>& point) {
  auto m = delkit::model_from_json(json::parse(model));
  if (point) {
    auto w = m.model.find_world(*point);
    if (!w) throw delkit::ModelError("unknown world '" + *point + "'");
    m.point = *w;
  }
  return m;
}

const char* verdict_name(delkit::tableau::Verdict v) {
  switch (v) {
    case delkit::tableau::Verdict::Satisfiable: return "sat";
    case delkit::tableau::Verdict::Unsatisfiable: return "unsat";
    case delkit::tableau::Verdict::ResourceLimit: return "unknown";
  }
  return "unknown";
}

delkit::tableau::Options budget(std::uint64_t steps, double seconds) {
  delkit::tableau::Options o;
  o.max_rule_applications = steps;
  o.time_limit = std::chrono::milliseconds(static_cast<long long>(seconds * 1000));
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Model checking, satisfiability and translation for dynamic epistemic logic";

  // Translators run newest first, so the base class goes first.
  py::register_exception<delkit::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<delkit::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<delkit::ModelError>(m, "ModelError", PyExc_ValueError);
  py::register_exception<delkit::BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

  m.def(
      "normalize",
      [](const std::string& formula, const std::string& events) {
        return delkit::to_string(delkit::parse_formula(formula, load_events(events)));
      },
      py::arg("formula"), py::arg("events") = "[]");

  m.def(
      "size",
      [](const std::string& formula, const std::string& events) {
        return delkit::parse_formula(formula, load_events(events)).size();
      },
      py::arg("formula"), py::arg("events") = "[]");

  m.def(
      "model_check",
      [](const std::string& model, const std::string& formula, const std::string& events,
         const std::optional<std::string>& point, const std::string& engine) {
        auto env = load_events(events);
        auto pm = load_model(model, point);
        auto f = delkit::parse_formula(formula, env);
        if (engine == "naive") return delkit::eval(pm, f);
        if (engine != "pspace") throw delkit::Error("unknown engine '" + engine + "'");
        return delkit::model_check(pm, f);
      },
      py::arg("model"), py::arg("formula"), py::arg("events") = "[]", py::arg("point") = py::none(),
      py::arg("engine") = "pspace");

  m.def(
      "is_satisfiable",
      [](const std::string& formula, const std::string& events, std::uint64_t steps,
         double seconds) {
        auto f = delkit::parse_formula(formula, load_events(events));
        auto r = delkit::tableau::is_satisfiable(f, budget(steps, seconds));
        std::optional<std::string> model;
        if (r.model) model = delkit::model_to_json(r.model->model, r.model->point).dump();
        return py::make_tuple(verdict_name(r.verdict), model);
      },
      py::arg("formula"), py::arg("events") = "[]", py::arg("steps") = 1'000'000,
      py::arg("seconds") = 60.0);

  m.def(
      "is_valid",
      [](const std::string& formula, const std::string& events, std::uint64_t steps,
         double seconds) -> std::optional<bool> {
        auto f = delkit::parse_formula(formula, load_events(events));
        auto r = delkit::tableau::is_valid(f, budget(steps, seconds));
        using V = delkit::tableau::ValidityResult::Verdict;
        if (r.verdict == V::ResourceLimit) return std::nullopt;
        return r.verdict == V::Valid;
      },
      py::arg("formula"), py::arg("events") = "[]", py::arg("steps") = 1'000'000,
      py::arg("seconds") = 60.0);

  m.def(
      "translate",
      [](const std::string& formula, const std::string& events, bool simplify) {
        auto f = delkit::parse_formula(formula, load_events(events));
        auto out = delkit::translate(f);
        if (simplify) out = delkit::simplify(out);
        return delkit::to_string(out);
      },
      py::arg("formula"), py::arg("events") = "[]", py::arg("simplify") = false);

  m.def("qbf_brute", [](const std::string& text) {
    return delkit::gen::qbf_brute(delkit::gen::parse_qbf(text));
  });

  m.def("qbf_model_check", [](const std::string& text) {
    auto r = delkit::gen::qbf_reduce(delkit::gen::parse_qbf(text));
    return delkit::model_check(r.model, r.goal);
  });

  m.def(
      "tiling_brute",
      [](const std::string& instance, std::optional<std::size_t> n) -> std::optional<bool> {
        auto t = delkit::gen::tiling_from_json(json::parse(instance), n);
        return delkit::gen::tiling_brute(t).has_value();
      },
      py::arg("instance"), py::arg("n") = py::none());

  m.def("product_worlds_built", &delkit::product_worlds_built);
}
