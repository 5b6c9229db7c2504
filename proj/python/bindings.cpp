#include "spine/coords.hpp"
#include "spine/flips.hpp"
#include "spine/forms.hpp"
#include "spine/fuzz.hpp"
#include "spine/paths.hpp"
#include "spine/ribbon.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace spine;

namespace {

py::object fraction(const Rational& r) {
  static py::object Fraction = py::module_::import("fractions").attr("Fraction");
  return Fraction(to_string(r));
}

py::list matrix(const CoordinateIndexedMatrix& m) {
  py::list rows;
  for (auto& row : m.m) {
    py::list r;
    for (auto& x : row) r.append(fraction(x));
    rows.append(r);
  }
  return rows;
}

py::dict matrix_dict(const CoordinateIndexedMatrix& m) {
  py::dict d;
  d["labels"] = m.labels;
  d["matrix"] = matrix(m);
  return d;
}

HalfPath path_of(const FatGraph& g, const std::string& w) { return resolve(g, PathWord::parse(w)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Fat-graph spines: lambda-lengths, geodesic functions, flips and forms";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<GraphError>(m, "GraphError", PyExc_ValueError);
  py::register_exception<PathError>(m, "PathError", PyExc_ValueError);
  py::register_exception<FlipError>(m, "FlipError", PyExc_ValueError);

  py::class_<FatGraph>(m, "Graph")
      .def_static("parse", &parse_graph, py::arg("text"))
      .def_static("load", &load_graph, py::arg("path"))
      .def("__str__", &format_graph)
      .def_property_readonly("edges",
                             [](const FatGraph& g) {
                               std::vector<std::string> out;
                               for (auto& e : g.edges()) out.push_back(e.name);
                               return out;
                             })
      .def_property_readonly("coordinate_labels", &FatGraph::coordinate_labels)
      .def_property_readonly("surface", [](const FatGraph& g) {
        auto& t = g.type();
        return py::make_tuple(t.g, t.sh, t.so, t.n);
      });

  m.def(
      "validate",
      [](const FatGraph& g) {
        std::vector<std::tuple<std::string, bool, std::string>> out;
        for (auto& c : validate(g).checks) out.emplace_back(c.name, c.passed, c.detail);
        return out;
      },
      "List of (check, passed, detail).");

  m.def("windows", [](const FatGraph& g) {
    std::vector<std::vector<std::string>> out;
    for (auto& w : windows(g)) {
      std::vector<std::string> t;
      for (int e : w.coordinate_tokens()) t.push_back(g.edge(e).name);
      out.push_back(t);
    }
    return out;
  });

  m.def("dual_arcs", [](const FatGraph& g) {
    std::map<std::string, std::pair<std::string, std::string>> out;
    for (int e : g.coordinate_edges()) {
      auto arc = dual_arc(g, e);
      out[g.edge(e).name] = {to_word(g, arc).str(), lambda_formal(g, arc).str()};
    }
    return out;
  });

  m.def(
      "matrix_word", [](const FatGraph& g, const std::string& path) { return compile(g, path_of(g, path)).str(); },
      py::arg("graph"), py::arg("path"));

  m.def(
      "lambda_length",
      [](const FatGraph& g, const std::string& path, bool formal) -> py::object {
        auto p = path_of(g, path);
        if (formal) return py::str(lambda_formal(g, p).str());
        auto n = lambda_numeric(g, p, CoordinatePoint::from_graph(g));
        if (n.exact) return fraction(*n.exact);
        return py::float_(n.value);
      },
      py::arg("graph"), py::arg("path"), py::arg("formal") = true);

  m.def(
      "geodesic",
      [](const FatGraph& g, const std::string& path, bool formal) -> py::object {
        auto p = path_of(g, path);
        if (formal) return py::str(geodesic_formal(g, p).str());
        auto v = std::get<Number>(geodesic_numeric(g, p, CoordinatePoint::from_graph(g)).value);
        if (v.exact) return fraction(*v.exact);
        return py::float_(v.value);
      },
      py::arg("graph"), py::arg("path"), py::arg("formal") = true);

  m.def("lambda_from_shear", [](FatGraph g) {
    store_lambdas(g, lambda_of_dual_arcs(g, CoordinatePoint::from_graph(g)));
    return g;
  });

  m.def("shear_from_lambda", [](FatGraph g) {
    store_point(g, shear_from_lambda(g, read_lambdas(g)));
    return g;
  });

  m.def(
      "flip",
      [](const FatGraph& g, const std::string& edge) {
        auto r = flip(g, g.edge_index(edge), CoordinatePoint::from_graph(g));
        store_point(r.graph, r.point);
        return r.graph;
      },
      py::arg("graph"), py::arg("edge"));

  m.def("verify_flip_identities", [] {
    py::list out;
    for (auto& r : verify_flip_matrix_identities()) {
      py::dict d;
      d["name"] = r.name;
      d["statement"] = r.statement;
      d["holds"] = r.holds;
      d["sign"] = r.sign;
      out.append(d);
    }
    return out;
  });

  m.def("poisson_matrix", [](const FatGraph& g) { return matrix_dict(poisson_matrix(g)); });
  m.def("window_form_matrix", [](const FatGraph& g) { return matrix_dict(window_form_matrix(g)); });
  m.def("penner_form_matrix", [](const FatGraph& g) { return matrix_dict(penner_form_matrix(g)); });
  m.def("center_vectors", [](const FatGraph& g) {
    auto c = center_vectors(g);
    std::vector<std::vector<long>> vs;
    for (auto& v : c.vectors) {
      std::vector<long> x;
      for (auto& k : v) x.push_back(static_cast<long>(k));
      vs.push_back(x);
    }
    py::dict d;
    d["labels"] = c.labels;
    d["vectors"] = vs;
    d["casimir_loops"] = c.casimir_loops;
    return d;
  });

  m.def(
      "verify_inverse",
      [](const FatGraph& g, std::optional<std::vector<std::string>> subset) {
        auto P = poisson_matrix(g);
        auto M = window_form_matrix(g);
        auto r = subset ? verify_inverse(M, P, *subset) : verify_inverse_on_leaf(M, P);
        py::dict d;
        d["c"] = fraction(r.c);
        d["residual"] = fraction(r.residual);
        d["scalar"] = r.scalar;
        d["dimension"] = r.dimension;
        return d;
      },
      py::arg("graph"), py::arg("subset") = py::none(),
      "Window form times Poisson bivector on a coordinate subset, or on the symplectic leaf.");

  m.def(
      "fuzz",
      [](std::uint64_t seed, int trials, std::optional<std::vector<std::string>> suites) {
        FuzzConfig cfg;
        cfg.seed = seed;
        cfg.trials = trials;
        if (suites) cfg.suites = *suites;
        auto rep = run_fuzz(cfg);
        return py::make_tuple(rep.ok(), rep.text());
      },
      py::arg("seed") = 1, py::arg("trials") = 20, py::arg("suites") = py::none());
}
