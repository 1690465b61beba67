#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dircheeger/acceptance.hpp"
#include "dircheeger/circulation.hpp"
#include "dircheeger/error.hpp"
#include "dircheeger/expansion.hpp"
#include "dircheeger/instances.hpp"
#include "dircheeger/io.hpp"
#include "dircheeger/log.hpp"
#include "dircheeger/mixing.hpp"
#include "dircheeger/report.hpp"
#include "dircheeger/rounding.hpp"
#include "dircheeger/spectral.hpp"

namespace py = pybind11;
using namespace dircheeger;

namespace {

// nlohmann -> Python; the "inf"/"nan" markers become floats again.
py::object to_py(const Json& j) {
  switch (j.type()) {
    case Json::value_t::null: return py::none();
    case Json::value_t::boolean: return py::bool_(j.get<bool>());
    case Json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
    case Json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
    case Json::value_t::number_float: return py::float_(j.get<double>());
    case Json::value_t::string: {
      const std::string& s = j.get_ref<const std::string&>();
      if (s == "inf") return py::float_(std::numeric_limits<double>::infinity());
      if (s == "-inf") return py::float_(-std::numeric_limits<double>::infinity());
      if (s == "nan") return py::float_(std::numeric_limits<double>::quiet_NaN());
      return py::str(s);
    }
    case Json::value_t::array: {
      py::list out;
      for (const Json& x : j) out.append(to_py(x));
      return out;
    }
    case Json::value_t::object: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it) out[py::str(it.key())] = to_py(it.value());
      return out;
    }
    default: return py::none();
  }
}

Mode parse_mode(const std::string& s) {
  if (s == "edge") return Mode::kEdge;
  if (s == "vertex") return Mode::kVertex;
  throw Error(ErrorKind::kParameter, "mode must be 'edge' or 'vertex'");
}

std::optional<VertexWeights> weights_for(const DirectedGraph& g, Mode mode,
                                         const std::optional<std::vector<double>>& pi) {
  if (pi) return VertexWeights(*pi);
  if (mode == Mode::kVertex) return VertexWeights::uniform(g.num_vertices());
  return std::nullopt;
}

GapOptions gap_options(double tol, int max_iters, int k) {
  GapOptions o;
  o.tol = tol;
  o.max_iters = max_iters;
  o.k = k;
  return o;
}

py::object steps_py(const Steps& s) {
  if (s) return py::int_(*s);
  return py::float_(std::numeric_limits<double>::infinity());
}

std::vector<std::tuple<int, int, double>> arc_list(const DirectedGraph& g) {
  std::vector<std::tuple<int, int, double>> out;
  for (const Arc& a : g.arcs()) out.emplace_back(a.tail, a.head, a.weight);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Directed Cheeger inequalities: exact evaluators, reweighted spectral gaps, rounding, mixing";
  m.attr("__version__") = kVersion;

  // kept alive for the life of the interpreter
  static PyObject* error = py::exception<Error>(m, "Error", PyExc_ValueError).release().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  set_warning_sink({});

  py::class_<DirectedGraph>(m, "DiGraph")
      .def(py::init([](int n, const std::vector<std::tuple<int, int, double>>& arcs) {
             std::vector<Arc> a;
             a.reserve(arcs.size());
             for (const auto& [u, v, w] : arcs) a.push_back({u, v, w});
             return DirectedGraph(n, std::move(a));
           }),
           py::arg("n"), py::arg("arcs"))
      .def_property_readonly("n", &DirectedGraph::num_vertices)
      .def_property_readonly("num_arcs", &DirectedGraph::num_arcs)
      .def_property_readonly("arcs", &arc_list)
      .def("degrees", &DirectedGraph::degrees)
      .def("__repr__", [](const DirectedGraph& g) {
        return "DiGraph(n=" + std::to_string(g.num_vertices()) + ", arcs=" + std::to_string(g.num_arcs()) + ")";
      });

  py::class_<Hypergraph>(m, "Hypergraph")
      .def(py::init([](int n, const std::vector<std::pair<std::vector<int>, double>>& edges) {
             std::vector<Hyperedge> e;
             for (const auto& [vs, w] : edges) e.push_back({vs, w});
             return Hypergraph(n, std::move(e));
           }),
           py::arg("n"), py::arg("edges"))
      .def_property_readonly("n", &Hypergraph::num_vertices)
      .def_property_readonly("num_edges", &Hypergraph::num_edges)
      .def_property_readonly("edges",
                             [](const Hypergraph& h) {
                               std::vector<std::pair<std::vector<int>, double>> out;
                               for (const Hyperedge& e : h.edges()) out.emplace_back(e.vertices, e.weight);
                               return out;
                             })
      .def("__repr__", [](const Hypergraph& h) {
        return "Hypergraph(n=" + std::to_string(h.num_vertices()) + ", edges=" + std::to_string(h.num_edges()) + ")";
      });

  m.def(
      "load",
      [](const std::string& path) -> py::object {
        if (peek_is_hypergraph(path)) return py::cast(load_hypergraph(path));
        return py::cast(load_digraph(path));
      },
      py::arg("path"), "Read a digraph or hypergraph file.");

  m.def(
      "generate",
      [](const std::string& family, int n, std::uint64_t seed, const std::map<std::string, double>& params) -> py::object {
        const Instance inst = dircheeger::generate({family, n, seed, params});
        return std::visit([](const auto& g) { return py::cast(g); }, inst);
      },
      py::arg("family"), py::arg("n"), py::arg("seed") = 1, py::arg("params") = std::map<std::string, double>{});

  m.def("families", [] {
    std::vector<std::string> out;
    for (const FamilyInfo& f : dircheeger::families()) out.push_back(f.name);
    return out;
  });

  m.def(
      "expansion",
      [](const DirectedGraph& g, const std::vector<int>& set, const std::string& mode,
         const std::optional<std::vector<double>>& pi) {
        const Mode md = parse_mode(mode);
        if (md == Mode::kEdge) return directed_edge_conductance(g, set);
        return directed_vertex_expansion(g, *weights_for(g, md, pi), set);
      },
      py::arg("g"), py::arg("set"), py::arg("mode") = "edge", py::arg("pi") = py::none());

  m.def(
      "hypergraph_conductance",
      [](const Hypergraph& h, const std::vector<int>& set) { return dircheeger::hypergraph_conductance(h, set); },
      py::arg("h"), py::arg("set"));

  m.def(
      "brute_force",
      [](const py::object& graph, const std::string& mode, const std::optional<std::vector<double>>& pi) {
        if (py::isinstance<Hypergraph>(graph)) {
          return to_py(to_json(brute_force_hypergraph_conductance(graph.cast<const Hypergraph&>())));
        }
        const DirectedGraph& g = graph.cast<const DirectedGraph&>();
        const Mode md = parse_mode(mode);
        if (md == Mode::kEdge) return to_py(to_json(brute_force_edge_conductance(g)));
        return to_py(to_json(brute_force_vertex_expansion(g, *weights_for(g, md, pi))));
      },
      py::arg("g"), py::arg("mode") = "edge", py::arg("pi") = py::none(),
      "Exact minimum over all proper subsets (small n only).");

  m.def(
      "asymmetric_ratio",
      [](const DirectedGraph& g, const std::optional<std::vector<double>>& pi) {
        return pi ? dircheeger::asymmetric_ratio(g, VertexWeights(*pi)) : dircheeger::asymmetric_ratio(g);
      },
      py::arg("g"), py::arg("pi") = py::none());

  m.def(
      "gap",
      [](const DirectedGraph& g, const std::string& mode, const std::optional<std::vector<double>>& pi, double tol,
         int max_iters, int k, bool witnesses) {
        const Mode md = parse_mode(mode);
        const SpectralBracket b = max_reweighted_gap(g, md, weights_for(g, md, pi), gap_options(tol, max_iters, k));
        return to_py(to_json(b, witnesses));
      },
      py::arg("g"), py::arg("mode") = "edge", py::arg("pi") = py::none(), py::arg("tol") = 1e-4,
      py::arg("max_iters") = 5000, py::arg("k") = 2, py::arg("witnesses") = false,
      "Bracket [lambda_lo, lambda_hi] on the maximum reweighted spectral gap.");

  m.def(
      "cut",
      [](const DirectedGraph& g, const std::string& mode, const std::optional<std::vector<double>>& pi,
         std::uint64_t seed, int ensemble, int threads, double tol, int max_iters) {
        const Mode md = parse_mode(mode);
        CutOptions o;
        o.gap = gap_options(tol, max_iters, 2);
        o.seed = seed;
        o.ensemble = ensemble;
        o.threads = threads;
        return to_py(to_json(spectral_cut(g, md, weights_for(g, md, pi), o)));
      },
      py::arg("g"), py::arg("mode") = "edge", py::arg("pi") = py::none(), py::arg("seed") = 1,
      py::arg("ensemble") = 5, py::arg("threads") = 1, py::arg("tol") = 1e-4, py::arg("max_iters") = 5000);

  m.def(
      "hyper_gap",
      [](const Hypergraph& h, double tol, int max_iters, int k) {
        return to_py(to_json(gamma2_hypergraph(h, gap_options(tol, max_iters, k))));
      },
      py::arg("h"), py::arg("tol") = 1e-4, py::arg("max_iters") = 5000, py::arg("k") = 2);

  m.def(
      "hyper_cut",
      [](const Hypergraph& h, std::uint64_t seed, int ensemble, int threads, double tol, int max_iters) {
        CutOptions o;
        o.gap = gap_options(tol, max_iters, 2);
        o.seed = seed;
        o.ensemble = ensemble;
        o.threads = threads;
        return to_py(to_json(hypergraph_cut(h, o)));
      },
      py::arg("h"), py::arg("seed") = 1, py::arg("ensemble") = 5, py::arg("threads") = 1, py::arg("tol") = 1e-4,
      py::arg("max_iters") = 5000);

  m.def("random_walk", &random_walk, py::arg("g"));
  m.def(
      "stationary",
      [](const Matrix& p) {
        const VertexWeights pi = stationary(p);
        return std::vector<double>(pi.values().begin(), pi.values().end());
      },
      py::arg("P"));
  m.def(
      "chung_laplacian", [](const Matrix& p, const std::vector<double>& pi) { return chung_laplacian(p, VertexWeights(pi)); },
      py::arg("P"), py::arg("pi"));
  m.def(
      "cheeger_h", [](const Matrix& p) { return to_py(to_json(cheeger_constant_h(p))); }, py::arg("P"));
  m.def(
      "mixing_time_tv", [](const Matrix& p, double eps) { return steps_py(mixing_time_tv(p, eps)); }, py::arg("P"),
      py::arg("eps") = 0.25);
  m.def(
      "mixing_time_inf", [](const Matrix& p, double eps) { return steps_py(mixing_time_inf(p, eps)); }, py::arg("P"),
      py::arg("eps") = 0.25);
  m.def(
      "fastest_mixing",
      [](const DirectedGraph& g, const std::optional<std::vector<double>>& pi, double tol, int max_iters) {
        const VertexWeights w = pi ? VertexWeights(*pi).normalized() : VertexWeights::uniform(g.num_vertices()).normalized();
        return to_py(to_json(fastest_mixing(g, w, gap_options(tol, max_iters, 2))));
      },
      py::arg("g"), py::arg("pi") = py::none(), py::arg("tol") = 1e-4, py::arg("max_iters") = 5000);

  m.def(
      "selftest",
      [](std::uint64_t seed, const std::vector<int>& only, int threads) {
        AcceptanceOptions o;
        o.seed = seed;
        o.only = only;
        o.threads = threads;
        std::vector<CriterionOutcome> outcomes;
        {
          py::gil_scoped_release release;
          outcomes = run_acceptance(o);
        }
        py::list out;
        for (const CriterionOutcome& c : outcomes) {
          py::dict d;
          d["id"] = c.id;
          d["name"] = c.name;
          d["passed"] = c.passed;
          d["seconds"] = c.seconds;
          d["detail"] = c.detail;
          d["data"] = to_py(c.data);
          out.append(d);
        }
        return out;
      },
      py::arg("seed") = 20240601, py::arg("only") = std::vector<int>{}, py::arg("threads") = 1);
}
