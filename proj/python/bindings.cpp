#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "symbreak/automorphisms.hpp"
#include "symbreak/colorings.hpp"
#include "symbreak/errors.hpp"
#include "symbreak/generators.hpp"
#include "symbreak/io.hpp"
#include "symbreak/spheres.hpp"

namespace py = pybind11;
using namespace symbreak;

namespace {

// Reports cross the boundary as plain dicts with the same schema as the
// JSON files the CLI writes.
py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

std::vector<std::string> ids(const std::vector<VertexId>& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

VertexId root_or_default(const GraphHandle& g, const std::optional<std::string>& root) {
  if (root) return VertexId(*root);
  if (auto r = g.root()) return *r;
  throw ArgumentError(g.family_name() + " has no default root; pass one");
}

std::size_t budget_or_default(std::size_t b) { return b ? b : default_vertex_budget(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Distinguishing colorings of locally finite graphs";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ArgumentError>(m, "ArgumentError", base.ptr());
  py::register_exception<IdentifierError>(m, "IdentifierError", base.ptr());
  auto budget = py::register_exception<BudgetExceeded>(m, "BudgetExceeded", base.ptr());
  auto cap = py::register_exception<SearchCapExceeded>(m, "SearchCapExceeded", base.ptr());
  py::register_exception<GroupTooLarge>(m, "GroupTooLarge", cap.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<AnchorNotFound>(m, "AnchorNotFound", base.ptr());
  py::register_exception<WitnessExhausted>(m, "WitnessExhausted", base.ptr());
  py::register_exception<StructureError>(m, "StructureError", base.ptr());
  py::register_exception<ScheduleInvalid>(m, "ScheduleInvalid", base.ptr());
  (void)budget;

  py::class_<GraphHandle>(m, "Graph")
      .def_property_readonly("name", &GraphHandle::family_name)
      .def_property_readonly("spec", &GraphHandle::spec_string)
      .def_property_readonly("default_root",
                             [](const GraphHandle& g) -> std::optional<std::string> {
                               if (auto r = g.root()) return r->str();
                               return std::nullopt;
                             })
      .def("neighbors", [](const GraphHandle& g, const std::string& v) { return ids(neighbors(g, VertexId(v))); })
      .def(
          "ball",
          [](const GraphHandle& g, const std::string& v, int r, std::size_t budget) {
            return to_py(to_json(ball(g, VertexId(v), r, budget_or_default(budget))));
          },
          py::arg("v"), py::arg("r"), py::arg("budget") = 0)
      .def(
          "sphere",
          [](const GraphHandle& g, const std::string& v, int r, std::size_t budget) {
            return ids(sphere(g, VertexId(v), r, budget_or_default(budget)));
          },
          py::arg("v"), py::arg("r"), py::arg("budget") = 0)
      .def(
          "distance",
          [](const GraphHandle& g, const std::string& u, const std::string& w, int cap) {
            return distance(g, VertexId(u), VertexId(w), cap);
          },
          py::arg("u"), py::arg("w"), py::arg("cap") = 64)
      .def("__repr__", [](const GraphHandle& g) { return "<Graph " + g.spec_string() + ">"; });

  m.def("make_graph", py::overload_cast<std::string_view>(&make_generator), py::arg("spec"),
        "Graph from a family spec such as 'family=regular_tree d=3'.");
  m.def("finite_graph", &finite_adjacency, py::arg("vertex_count"), py::arg("edges"));

  py::class_<Coloring>(m, "Coloring")
      .def_property_readonly("graph", [](const Coloring& c) { return c.graph; })
      .def_property_readonly("root", [](const Coloring& c) { return c.root.str(); })
      .def_readonly("radius", &Coloring::radius)
      .def_readonly("strategy", &Coloring::strategy)
      .def_readonly("notes", &Coloring::notes)
      .def_property_readonly("blue",
                             [](const Coloring& c) { return ids({c.blue.begin(), c.blue.end()}); })
      .def("is_blue", [](const Coloring& c, const std::string& x) { return c.is_blue(VertexId(x)); })
      .def("to_dict", [](const Coloring& c) { return to_py(to_json(c)); })
      .def_static("from_json", [](const std::string& text) { return coloring_from_json(Json::parse(text)); })
      .def("to_json", [](const Coloring& c) { return to_json(c).dump(2); })
      .def("__len__", [](const Coloring& c) { return c.blue.size(); });

  m.def(
      "check_dsc",
      [](const GraphHandle& g, std::optional<std::string> root, int r_pairs, int R) {
        return to_py(to_json(check_dsc(g, root_or_default(g, root), r_pairs, R)));
      },
      py::arg("graph"), py::arg("root") = std::nullopt, py::arg("r_pairs") = 2, py::arg("R") = 10);
  m.def(
      "growth_profile",
      [](const GraphHandle& g, std::optional<std::string> root, int R) {
        return to_py(to_json(growth_profile(g, root_or_default(g, root), R)));
      },
      py::arg("graph"), py::arg("root") = std::nullopt, py::arg("R") = 10);

  m.def(
      "dsc_coloring",
      [](const GraphHandle& g, std::optional<std::string> root, int r_pairs, int R, std::optional<int> gap) {
        const auto v = root_or_default(g, root);
        return gap ? dsc_coloring_relaxed(g, v, r_pairs, R, *gap) : dsc_coloring(g, v, r_pairs, R);
      },
      py::arg("graph"), py::arg("root") = std::nullopt, py::arg("r_pairs") = 2, py::arg("R") = 40,
      py::arg("gap") = std::nullopt, "Strict witness depths unless gap is given.");
  m.def(
      "random_coloring",
      [](const GraphHandle& g, std::optional<std::string> root, int R, const std::string& schedule,
         std::uint64_t seed) {
        return random_coloring(g, root_or_default(g, root), R, RandomSchedule::parse(schedule, seed));
      },
      py::arg("graph"), py::arg("root") = std::nullopt, py::arg("R") = 20, py::arg("schedule") = "harmonic",
      py::arg("seed") = 0);
  m.def(
      "motion_growth_coloring",
      [](const GraphHandle& g, std::optional<std::string> root, const std::string& eps, int R) {
        return motion_growth_coloring(g, root_or_default(g, root), Rational::parse(eps), R);
      },
      py::arg("graph"), py::arg("root") = std::nullopt, py::arg("epsilon") = "1/4", py::arg("R") = 60);
  m.def(
      "explicit_coloring",
      [](const GraphHandle& g, const std::string& root, int R, const std::vector<std::string>& blue) {
        std::set<VertexId> b;
        for (const auto& x : blue) b.emplace(x);
        return explicit_coloring(g, VertexId(root), R, std::move(b));
      },
      py::arg("graph"), py::arg("root"), py::arg("R"), py::arg("blue"));

  m.def(
      "verify",
      [](const Coloring& c, std::optional<int> R_outer, int r_inner) {
        VerifyReport rep;
        {
          py::gil_scoped_release release;
          rep = verify_distinguishing(c, R_outer.value_or(c.radius), r_inner);
        }
        return to_py(to_json(rep));
      },
      py::arg("coloring"), py::arg("R_outer") = std::nullopt, py::arg("r_inner") = 1);
  m.def(
      "density_profile",
      [](const Coloring& c, std::optional<int> R) {
        return to_py(to_json(density_profile(c, c.root, R.value_or(c.radius))));
      },
      py::arg("coloring"), py::arg("R") = std::nullopt);
  m.def(
      "monte_carlo",
      [](const GraphHandle& g, std::optional<std::string> root, int R_outer, int r_inner, const std::string& schedule,
         std::uint64_t seed, int trials, unsigned threads) {
        const auto v = root_or_default(g, root);
        const auto s = RandomSchedule::parse(schedule, seed);
        MonteCarloReport rep;
        {
          py::gil_scoped_release release;
          rep = monte_carlo_distinguishing(g, v, R_outer, r_inner, s, trials, threads);
        }
        return to_py(to_json(rep));
      },
      py::arg("graph"), py::arg("root") = std::nullopt, py::arg("R_outer") = 8, py::arg("r_inner") = 2,
      py::arg("schedule") = "harmonic", py::arg("seed") = 0, py::arg("trials") = 100, py::arg("threads") = 0);

  m.def("chain_length_bound", &chain_length_bound, py::arg("n"));
}
