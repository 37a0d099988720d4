#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "decalage/errors.hpp"
#include "decalage/io.hpp"
#include "decalage/lattice.hpp"
#include "decalage/theorem.hpp"

namespace py = pybind11;
using namespace decalage;

namespace {

// JSON crosses the boundary as text; the Python package parses it.
std::string generate(const std::string& profile, std::uint64_t seed, const std::string& poset, const std::string& ring,
                     const std::string& xi, int max_degree, std::size_t max_rank, int budget) {
  GenerationOptions opt;
  opt.site = site_from_spec(poset);
  opt.ring = ring_from_spec(ring, xi);
  opt.max_degree = max_degree;
  opt.max_rank = max_rank;
  opt.budget = budget;
  return instance_to_json(generate_instance(profile, seed, opt)).dump();
}

std::string theorem_report(const std::string& instance) {
  return report_to_json(verify_main_theorem(instance_from_json(Json::parse(instance)))).dump();
}

std::pair<Lattice, Lattice> lattices(const std::string& ring_json, const std::string& basis, int shift,
                                     const std::string& basis0, int shift0) {
  const Ring r = ring_from_json(Json::parse(ring_json));
  const Json b = Json::parse(basis), b0 = Json::parse(basis0);
  auto square = [&](const Json& m) {
    if (!m.is_array()) throw ParseError("a basis must be a list of rows");
    return matrix_from_json(r, m, m.size(), m.size());
  };
  return {Lattice(square(b), shift), Lattice(square(b0), shift0)};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Decalage, Bockstein and Bialynicki-Birula checks on finite models";

  py::register_exception<Error>(m, "DecalageError", PyExc_ValueError);

  py::class_<cli::RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("command", &cli::RunConfig::command)
      .def_readwrite("inputs", &cli::RunConfig::inputs)
      .def_readwrite("seed", &cli::RunConfig::seed)
      .def_readwrite("ring", &cli::RunConfig::ring)
      .def_readwrite("xi", &cli::RunConfig::xi)
      .def_readwrite("count", &cli::RunConfig::count)
      .def_readwrite("max_degree", &cli::RunConfig::max_degree)
      .def_readwrite("max_rank", &cli::RunConfig::max_rank)
      .def_readwrite("poset", &cli::RunConfig::poset)
      .def_readwrite("format", &cli::RunConfig::format)
      .def_readwrite("out", &cli::RunConfig::out)
      .def_readwrite("generate", &cli::RunConfig::generate)
      .def_readwrite("filtration", &cli::RunConfig::filtration)
      .def_readwrite("pages", &cli::RunConfig::pages)
      .def_readwrite("lift_rounds", &cli::RunConfig::lift_rounds)
      .def_readwrite("budget", &cli::RunConfig::budget);

  m.def(
      "run",
      [](const cli::RunConfig& cfg) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run(cfg, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      "Runs one command; returns (exit code, report, diagnostics).");

  m.def("fixture_dir", &cli::fixture_dir);
  m.def("generate", &generate, py::call_guard<py::gil_scoped_release>());
  m.def("theorem_report", &theorem_report, py::call_guard<py::gil_scoped_release>());
  m.def("ht_failure_witness", [] { return instance_to_json(ht_failure_witness()).dump(); });
  m.def("ring_json", [](const std::string& kind, const std::string& xi) { return ring_to_json(ring_from_spec(kind, xi)).dump(); });

  m.def("relative_position", [](const std::string& ring, const std::string& b, int s, const std::string& b0, int s0) {
    auto [l, l0] = lattices(ring, b, s, b0, s0);
    return relative_position(l, l0);
  });
  m.def("bb_filtration", [](const std::string& ring, const std::string& b, int s, const std::string& b0, int s0) {
    auto [l, l0] = lattices(ring, b, s, b0, s0);
    return flag_to_json(bb_filtration(l, l0)).dump();
  });
}
