#pragma once

#include <json.hpp>

#include "nfsolv/config.hpp"
#include "nfsolv/grid.hpp"
#include "nfsolv/potential.hpp"

namespace nfsolv {

struct RunReport {
  nlohmann::json report;  // config echo, stage reports, verdict, artifacts
  int exit_code = 1;      // 0 pass, 2 condition failure, 1 error

  // plot-ready stage data
  std::vector<double> witness_sigmas, witness_norms;
  std::vector<double> neumann_tail;              // certified tail per iteration
  std::vector<double> sphere_angle_theta, sphere_angle_phi, sphere_magnitude;
  std::vector<double> eigenvalue_ladder;
};

// f on the x-grid from the source block; with source.manufactured the source
// is H_a applied to e^{-c|x|^2} in closed form.
Field build_source(const RunConfig& c, const Grid& xgrid);

// H_a (e^{-c|x|^2}) evaluated analytically.
Field manufactured_rhs(const PotentialSpec& V, double a, double c_width,
                       const Grid& grid);

RunReport run(const RunConfig& config);

// which: "sphere" | "witness" | "neumann_tail" | "eigenvalues"; missing stage
// data raises Error.
void emit_plot_data(const RunReport& report, const std::string& which,
                    const std::string& out_dir);

}  // namespace nfsolv
