#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "rcascade/cascade.hpp"
#include "rcascade/experiment.hpp"
#include "rcascade/generators.hpp"
#include "rcascade/graph.hpp"
#include "rcascade/oracle.hpp"
#include "rcascade/seeders.hpp"

namespace py = pybind11;
using namespace rcascade;

namespace {

// Accepts "a/b", an int, a (num, den) tuple, or anything with integer
// numerator/denominator attributes such as fractions.Fraction.
Rational to_rational(const py::handle& obj) {
  if (py::isinstance<py::str>(obj)) return Rational::parse(obj.cast<std::string>());
  if (py::isinstance<py::int_>(obj)) return Rational(obj.cast<std::uint64_t>(), 1);
  if (py::isinstance<py::tuple>(obj)) {
    const auto t = obj.cast<py::tuple>();
    if (t.size() != 2) throw py::value_error("rho tuple must be (numerator, denominator)");
    return Rational(t[0].cast<std::uint64_t>(), t[1].cast<std::uint64_t>());
  }
  if (py::hasattr(obj, "numerator") && py::hasattr(obj, "denominator")) {
    return Rational(obj.attr("numerator").cast<std::uint64_t>(), obj.attr("denominator").cast<std::uint64_t>());
  }
  throw py::type_error("rho must be 'a/b', an int, a (num, den) tuple or a Fraction");
}

py::object to_fraction(const Rational& r) {
  return py::module_::import("fractions").attr("Fraction")(r.num(), r.den());
}

VertexSet to_set(const Graph& g, const std::vector<Vertex>& ids) {
  for (auto v : ids) {
    if (v >= g.num_vertices()) throw py::index_error("vertex " + std::to_string(v) + " outside graph");
  }
  return VertexSet(g.num_vertices(), std::span<const Vertex>(ids));
}

struct PyTrace {
  CascadeTrace trace;
  std::string termination() const { return trace.termination.str(); }
  std::string kind() const {
    switch (trace.termination.kind) {
      case Termination::Kind::all_active: return "all_active";
      case Termination::Kind::fixed_point: return "fixed_point";
      case Termination::Kind::cycle: return "cycle";
      case Termination::Kind::budget_exhausted: return "budget_exhausted";
    }
    return "unknown";
  }
};

py::dict seed_dict(const SeedSet& s) {
  py::dict d;
  d["vertices"] = s.vertices.members();
  d["provenance"] = std::string(to_string(s.provenance));
  d["budget"] = s.budget;
  d["size"] = s.size();
  return d;
}

py::dict oracle_dict(const OracleResult& r) {
  py::dict d;
  d["minimum"] = r.minimum;
  d["witness"] = r.witness.members();
  d["k"] = r.k;
  d["explored"] = r.explored;
  return d;
}

std::vector<Rational> to_rationals(const py::iterable& items) {
  std::vector<Rational> out;
  for (auto item : items) out.push_back(to_rational(item));
  return out;
}

}  // namespace

PYBIND11_MODULE(_rcascade, m) {
  m.doc() = "Reversible threshold cascades on graphs";

  static py::exception<GraphError> graph_error(m, "GraphError", PyExc_ValueError);
  static py::exception<GenerationError> generation_error(m, "GenerationError", PyExc_RuntimeError);
  static py::exception<GuaranteeViolation> guarantee_error(m, "GuaranteeViolation", PyExc_RuntimeError);
  static py::exception<CsvError> csv_error(m, "CsvError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const GraphError& e) {
      graph_error(e.what());
    } catch (const GenerationError& e) {
      generation_error(e.what());
    } catch (const GuaranteeViolation& e) {
      guarantee_error((std::string(e.what()) + ": " + format_csv_row(e.record())).c_str());
    } catch (const CsvError& e) {
      csv_error(e.what());
    }
  });

  py::class_<Graph>(m, "Graph")
      .def(py::init([](std::size_t n, const std::vector<Edge>& edges, bool directed) {
             return Graph::build(n, edges, directed ? Directedness::directed : Directedness::undirected);
           }),
           py::arg("n"), py::arg("edges"), py::arg("directed") = false)
      .def_property_readonly("num_vertices", &Graph::num_vertices)
      .def_property_readonly("num_edges", &Graph::num_edges)
      .def_property_readonly("directed", &Graph::directed)
      .def("edges", &Graph::edges)
      .def("in_neighbors", [](const Graph& g, Vertex v) {
        if (v >= g.num_vertices()) throw py::index_error("vertex outside graph");
        auto s = g.in_neighbors(v);
        return std::vector<Vertex>(s.begin(), s.end());
      })
      .def("out_neighbors", [](const Graph& g, Vertex v) {
        if (v >= g.num_vertices()) throw py::index_error("vertex outside graph");
        auto s = g.out_neighbors(v);
        return std::vector<Vertex>(s.begin(), s.end());
      })
      .def("degree", [](const Graph& g, Vertex v) {
        if (v >= g.num_vertices()) throw py::index_error("vertex outside graph");
        return g.in_degree(v);
      })
      .def("has_edge", &Graph::has_edge)
      .def("is_connected", [](const Graph& g) { return is_connected(g); })
      .def("diameter", [](const Graph& g) { return diameter(g); })
      .def("degree_histogram", [](const Graph& g) { return degree_histogram(g); })
      .def("tail_constant", [](const Graph& g, double gamma) { return empirical_tail_constant(g, gamma); },
           py::arg("gamma"))
      .def("to_text", [](const Graph& g) {
        std::ostringstream out;
        write_edge_list(out, g);
        return out.str();
      })
      .def_static("from_text", [](const std::string& text) {
        std::istringstream in(text);
        return read_edge_list(in);
      })
      .def_static("load", &load_edge_list)
      .def("save", [](const Graph& g, const std::string& path) { save_edge_list(path, g); })
      .def("__repr__", [](const Graph& g) {
        return "<Graph n=" + std::to_string(g.num_vertices()) + " m=" + std::to_string(g.num_edges()) +
               (g.directed() ? " directed>" : " undirected>");
      });

  m.def("gen_er", [](std::size_t n, double p, std::uint64_t seed, std::uint64_t trial) {
    return gen_er({n, p}, {seed, trial});
  }, py::arg("n"), py::arg("p"), py::arg("seed") = 0, py::arg("trial") = 0);
  m.def("gen_powerlaw", [](std::size_t n, double gamma, double C, std::uint64_t seed, std::uint64_t trial,
                           std::size_t max_retries) {
    return gen_powerlaw_connected({n, gamma, C}, {seed, trial}, max_retries);
  }, py::arg("n"), py::arg("gamma"), py::arg("C"), py::arg("seed") = 0, py::arg("trial") = 0,
     py::arg("max_retries") = 16);
  m.def("gen_circulant", &gen_circulant, py::arg("n"), py::arg("d"));

  py::class_<PyTrace>(m, "CascadeTrace")
      .def_property_readonly("termination", &PyTrace::termination)
      .def_property_readonly("kind", &PyTrace::kind)
      .def_property_readonly("round", [](const PyTrace& t) { return t.trace.termination.round; })
      .def_property_readonly("period", [](const PyTrace& t) { return t.trace.termination.period; })
      .def_property_readonly("rounds_to_full", [](const PyTrace& t) { return t.trace.rounds_to_full; })
      .def_property_readonly("monotone", [](const PyTrace& t) { return t.trace.monotone; })
      .def_property_readonly("steps", [](const PyTrace& t) { return t.trace.steps; })
      .def_property_readonly("final_state", [](const PyTrace& t) { return t.trace.final_state.members(); })
      .def_property_readonly("states", [](const PyTrace& t) {
        std::vector<std::vector<Vertex>> out;
        for (const auto& s : t.trace.states) out.push_back(s.members());
        return out;
      })
      .def("__repr__", [](const PyTrace& t) { return "<CascadeTrace " + t.termination() + ">"; });

  m.def("run_cascade", [](const Graph& g, const std::vector<Vertex>& seeds, const py::object& rho,
                          const std::string& mode, const std::string& scheduler, std::uint64_t seed,
                          std::optional<std::size_t> budget, bool record_states) {
    const ThresholdConfig cfg{to_rational(rho), parse_mode(mode)};
    const Scheduler sched{parse_scheduler(scheduler), {seed, 0}};
    return PyTrace{run_cascade(g, to_set(g, seeds), cfg, sched, budget, {record_states})};
  }, py::arg("graph"), py::arg("seeds"), py::arg("rho"), py::arg("mode") = "sync",
     py::arg("scheduler") = "round-robin", py::arg("seed") = 0, py::arg("budget") = py::none(),
     py::arg("record_states") = true);
  m.def("sync_step", [](const Graph& g, const std::vector<Vertex>& state, const py::object& rho) {
    return sync_step(g, to_set(g, state), to_rational(rho)).members();
  }, py::arg("graph"), py::arg("state"), py::arg("rho"));
  m.def("check_seed_stability", [](const Graph& g, const std::vector<Vertex>& seeds, const py::object& rho) {
    return check_seed_stability(g, to_set(g, seeds), to_rational(rho));
  }, py::arg("graph"), py::arg("seeds"), py::arg("rho"));

  m.def("highdeg_seeder", [](const Graph& g, const py::object& rho) {
    return seed_dict(highdeg_seeder(g, to_rational(rho)));
  }, py::arg("graph"), py::arg("rho"));
  m.def("random_repair_seeder", [](const Graph& g, const py::object& rho, double C, std::uint64_t seed,
                                   std::uint64_t trial) {
    return seed_dict(random_repair_seeder(g, to_rational(rho), C, {seed, trial}));
  }, py::arg("graph"), py::arg("rho"), py::arg("C") = 2.0, py::arg("seed") = 0, py::arg("trial") = 0);
  m.def("budget_highdeg", [](const Graph& g, const py::object& rho) { return budget_highdeg(g, to_rational(rho)); },
        py::arg("graph"), py::arg("rho"));
  m.def("budget_random_repair", [](const Graph& g, const py::object& rho, double C) {
    return budget_random_repair(g, to_rational(rho), C);
  }, py::arg("graph"), py::arg("rho"), py::arg("C") = 2.0);
  m.def("count_low_indegree", [](const Graph& g, const py::object& rho, double C) {
    return count_low_indegree(g, to_rational(rho), C);
  }, py::arg("graph"), py::arg("rho"), py::arg("C") = 2.0);

  m.attr("ORACLE_MAX_VERTICES") = kOracleMaxVertices;
  m.def("min_seed_exact", [](const Graph& g, const py::object& rho, std::size_t k, const std::string& mode) {
    return oracle_dict(min_seed_exact(g, to_rational(rho), k, parse_mode(mode)));
  }, py::arg("graph"), py::arg("rho"), py::arg("k"), py::arg("mode") = "sync");
  m.def("min_seed_curve", [](const Graph& g, const py::object& rho, std::size_t k_max, const std::string& mode) {
    std::vector<std::size_t> out;
    for (const auto& r : min_seed_curve(g, to_rational(rho), k_max, parse_mode(mode))) out.push_back(r.minimum);
    return out;
  }, py::arg("graph"), py::arg("rho"), py::arg("k_max"), py::arg("mode") = "sync");

  py::class_<ExperimentRecord>(m, "ExperimentRecord")
      .def_readonly("trial", &ExperimentRecord::trial)
      .def_readonly("generator", &ExperimentRecord::generator)
      .def_readonly("params", &ExperimentRecord::params)
      .def_property_readonly("rho", [](const ExperimentRecord& r) { return to_fraction(r.rho); })
      .def_readonly("seeder", &ExperimentRecord::seeder)
      .def_readonly("seed_count", &ExperimentRecord::seed_count)
      .def_readonly("budget", &ExperimentRecord::budget)
      .def_readonly("theory_scale", &ExperimentRecord::theory_scale)
      .def_readonly("rounds_to_full", &ExperimentRecord::rounds_to_full)
      .def_readonly("monotone", &ExperimentRecord::monotone)
      .def_readonly("rng_seed", &ExperimentRecord::rng_seed)
      .def_readonly("n", &ExperimentRecord::n)
      .def("csv_row", &format_csv_row)
      .def("__repr__", [](const ExperimentRecord& r) { return "<ExperimentRecord " + format_csv_row(r) + ">"; });

  m.attr("CSV_HEADER") = kCsvHeader;
  m.def("run_sweep", [](const std::string& generator, const std::vector<std::size_t>& ns, const py::iterable& rhos,
                        std::size_t trials, const std::string& seeder, std::uint64_t seed,
                        const std::vector<double>& ps, const std::vector<double>& p_multipliers,
                        const std::vector<double>& gammas, const std::vector<double>& tail_constants,
                        const std::vector<std::size_t>& degrees, double repair_c, std::size_t threads,
                        std::size_t max_retries) {
    SweepSpec spec;
    spec.generator = parse_generator(generator);
    spec.ns = ns;
    spec.rhos = to_rationals(rhos);
    spec.trials = trials;
    spec.seeder = parse_seeder(seeder);
    spec.base_seed = seed;
    spec.ps = ps;
    spec.p_multipliers = p_multipliers;
    spec.gammas = gammas;
    spec.tail_constants = tail_constants;
    spec.degrees = degrees;
    spec.repair_c = repair_c;
    spec.threads = threads;
    spec.max_retries = max_retries;
    py::gil_scoped_release release;
    return run_sweep(spec);
  }, py::arg("generator"), py::arg("ns"), py::arg("rhos"), py::arg("trials") = 1,
     py::arg("seeder") = "random-repair", py::arg("seed") = 0, py::arg("ps") = std::vector<double>{},
     py::arg("p_multipliers") = std::vector<double>{}, py::arg("gammas") = std::vector<double>{},
     py::arg("tail_constants") = std::vector<double>{}, py::arg("degrees") = std::vector<std::size_t>{},
     py::arg("repair_c") = 2.0, py::arg("threads") = 0, py::arg("max_retries") = 16);
  m.def("to_csv", [](const std::vector<ExperimentRecord>& rows) {
    std::ostringstream out;
    write_csv(out, rows);
    return out.str();
  }, py::arg("rows"));
  m.def("read_csv", [](const std::string& text) {
    std::istringstream in(text);
    return read_csv(in);
  }, py::arg("text"));
}
