#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nfsolv/grid.hpp"
#include "nfsolv/potential.hpp"
#include "nfsolv/run.hpp"
#include "nfsolv/scattering.hpp"

namespace py = pybind11;

namespace {

// JSON-in / JSON-out entry point: the full pipeline behind one call.
py::tuple run_json(const std::string& subcommand, const std::string& config,
                   const std::string& out_dir) {
  nfsolv::RunConfig cfg =
      nfsolv::parse_config(nlohmann::json::parse(config));
  cfg.subcommand = subcommand;
  if (!out_dir.empty()) cfg.out_dir = out_dir;
  const nfsolv::RunReport rr = nfsolv::run(cfg);
  return py::make_tuple(rr.exit_code, rr.report.dump());
}

py::tuple q_bound(const std::string& family, double beta, double c) {
  nfsolv::PotentialSpec V;
  V.family = nfsolv::potential_family_from_name(family);
  V.beta = beta;
  V.c = c;
  const nfsolv::QNormBound b = nfsolv::q_norm_bound(V);
  return py::make_tuple(b.bound, b.optimal_radius);
}

}  // namespace

PYBIND11_MODULE(_nfsolv, m) {
  m.doc() = "solvability toolkit for non-Fredholm Schrodinger operators";
  m.def("run_json", &run_json, py::arg("subcommand"), py::arg("config"),
        py::arg("out_dir") = std::string(),
        "Execute a pipeline; returns (exit_code, report_json).");
  m.def("q_bound", &q_bound, py::arg("family"), py::arg("beta"),
        py::arg("c") = 1.0, "Contraction certificate (bound, optimal_radius).");
  m.def("c_hls_default", &nfsolv::c_hls_default);
  m.def("sphere_surface_measure", &nfsolv::sphere_surface_measure,
        py::arg("dim"), py::arg("radius"));

  // translators run newest-first: register the base before the refinement
  py::register_exception<nfsolv::Error>(m, "NfsolvError", PyExc_RuntimeError);
  py::register_exception<nfsolv::ConfigError>(m, "ConfigError",
                                              PyExc_ValueError);
}
