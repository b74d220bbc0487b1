#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ternrev/bench.hpp"
#include "ternrev/cycles.hpp"
#include "ternrev/mmd.hpp"
#include "ternrev/peephole.hpp"
#include "ternrev/scale.hpp"

namespace py = pybind11;
using namespace ternrev;

namespace {

Perm to_perm(const std::vector<Point>& image) { return Perm(image); }

SynthOptions options(std::optional<std::uint64_t> seed) {
  SynthOptions so;
  if (seed) so.seed = *seed;
  return so;
}

py::dict cost_report(const Circuit& c) {
  py::dict d;
  d["raw"] = circuit_cost(c);
  d["adjusted"] = circuit_cost(c, {}, CostMode::adjusted);
  d["optimized"] = circuit_cost(optimize(c));
  d["gates"] = c.size();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Ternary reversible circuit synthesis";
  m.attr("__version__") = std::string(kToolVersion);
  m.attr("DEFAULT_SEED") = kDefaultSeed;

  m.def(
      "synthesize",
      [](const std::vector<Point>& image, const std::string& method, std::optional<std::uint64_t> seed,
         bool pivot_search) {
        return format_circuit(synthesize(to_perm(image), parse_method(method), options(seed), pivot_search));
      },
      py::arg("perm"), py::arg("method") = "mmd", py::arg("seed") = py::none(), py::arg("pivot_search") = false,
      "Synthesize a 9-entry permutation; returns the circuit in text form.");

  m.def(
      "simulate", [](const std::string& text) { return simulate(parse_circuit(text)).image(); }, py::arg("circuit"),
      "Permutation computed by a circuit given in text form.");

  m.def(
      "costs", [](const std::string& text) { return cost_report(parse_circuit(text)); }, py::arg("circuit"));

  m.def(
      "optimize", [](const std::string& text) { return format_circuit(optimize(parse_circuit(text))); },
      py::arg("circuit"));

  m.def(
      "draw", [](const std::string& text) { return draw_circuit(parse_circuit(text)); }, py::arg("circuit"));

  m.def(
      "natural_cycles",
      [](const std::vector<Point>& image) {
        std::vector<std::vector<Point>> out;
        for (const Cycle& c : natural_cycles(to_perm(image)).factors) out.push_back(c.points());
        return out;
      },
      py::arg("perm"));

  m.def(
      "compose3",
      [](const std::string& c0, const std::string& c1, const std::string& c2) {
        return format_circuit(compose_3x3(parse_circuit(c0, 2), parse_circuit(c1, 2), parse_circuit(c2, 2)));
      },
      py::arg("c0"), py::arg("c1"), py::arg("c2"));

  m.def("class_size", [](int n) { return py::int_(py::str(class_size_string(n))); }, py::arg("n"));

  m.def("perm_from_rank", [](std::uint64_t r) { return perm_from_rank(r).image(); }, py::arg("rank"));
  m.def("perm_rank", [](const std::vector<Point>& image) { return perm_rank(to_perm(image)); }, py::arg("perm"));

  m.def(
      "bench_function",
      [](std::uint64_t rank, std::optional<std::uint64_t> seed) {
        BenchOptions o;
        if (seed) o.seed = *seed;
        const BenchRecord r = bench_function(rank, o);
        py::dict d;
        for (Method meth : kAllMethods) {
          const MethodResult& res = r[meth];
          py::dict e;
          e["cost_raw"] = res.cost_raw;
          e["cost_adj"] = res.cost_adj;
          e["cost_opt"] = res.cost_opt;
          e["gates"] = res.gates;
          d[py::str(std::string(method_name(meth)))] = e;
        }
        return d;
      },
      py::arg("rank"), py::arg("seed") = py::none());

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
}
