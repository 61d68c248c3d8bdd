#include "nfsolv/run.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>

#include "nfsolv/cache.hpp"
#include "nfsolv/genfourier.hpp"
#include "nfsolv/helmholtz.hpp"
#include "nfsolv/scattering.hpp"
#include "nfsolv/separable.hpp"
#include "nfsolv/spectrum.hpp"

namespace nfsolv {

using nlohmann::json;

namespace {

class StageTimer {
 public:
  explicit StageTimer(json& slot) : slot_(slot) {}

  template <typename F>
  auto time(const std::string& stage, F&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    if constexpr (std::is_void_v<decltype(fn())>) {
      fn();
      record(stage, t0);
    } else {
      auto out = fn();
      record(stage, t0);
      return out;
    }
  }

 private:
  void record(const std::string& stage,
              std::chrono::steady_clock::time_point t0) {
    const std::chrono::duration<double> dt =
        std::chrono::steady_clock::now() - t0;
    slot_[stage] = dt.count();
  }

  json& slot_;
};

std::ofstream open_out(const std::string& path) {
  std::filesystem::create_directories(
      std::filesystem::path(path).parent_path());
  std::ofstream os(path);
  if (!os) throw Error("cannot open output file: " + path);
  os << std::setprecision(17);
  return os;
}

void note_artifact(json& report, const std::string& path) {
  report["artifacts"].push_back(path);
}

json assumption_json(const AssumptionReport& r) {
  return {{"norm_inf", r.norm_inf},
          {"norm_4_3", r.norm_4_3},
          {"norm_3_2", r.norm_3_2},
          {"norm_1", r.norm_1},
          {"smallness_value", r.smallness_value},
          {"hls_value", r.hls_value},
          {"c_hls_used", r.c_hls_used},
          {"decay_ok", r.decay_ok},
          {"envelope_C", r.envelope_C},
          {"envelope_eps", r.envelope_eps},
          {"f_l2", r.f_l2},
          {"xf_l1", r.xf_l1},
          {"f_l1_bound", r.f_l1_bound},
          {"passed", r.passed}};
}

json solvability_json(const SolvabilityReport& r) {
  return {{"a", r.a},
          {"max_abs", r.max_abs},
          {"threshold", r.threshold},
          {"verdict", verdict_name(r.verdict)},
          {"grad_bound", r.grad_bound},
          {"sphere_points", r.sphere.count()}};
}

// Fills the plot-ready sphere arrays from a dim-3 (or lower) sampling.
void stash_sphere(RunReport& rr, const SphereSampling& sphere,
                  const Field& values) {
  for (std::size_t i = 0; i < sphere.count(); ++i) {
    const double* p = sphere.point(i);
    double theta = 0.0, phi = 0.0;
    if (sphere.dim >= 2 && sphere.radius > 0.0) {
      phi = std::atan2(sphere.dim >= 2 ? p[1] : 0.0, p[0]);
      if (sphere.dim >= 3) theta = std::acos(p[2] / sphere.radius);
    } else if (sphere.dim == 1) {
      phi = p[0] < 0.0 ? pi : 0.0;
    }
    rr.sphere_angle_theta.push_back(theta);
    rr.sphere_angle_phi.push_back(phi);
    rr.sphere_magnitude.push_back(std::abs(values[i]));
  }
}

void write_solution_csv(const std::string& path, const Field& u,
                        const Grid& grid) {
  std::ofstream os = open_out(path);
  for (int d = 0; d < grid.dim; ++d) os << "x" << d + 1 << ",";
  os << "re_u,im_u\n";
  std::vector<double> x(grid.dim);
  for (std::size_t i = 0; i < u.size(); ++i) {
    grid.node(i, x.data());
    for (int d = 0; d < grid.dim; ++d) os << x[d] << ",";
    os << u[i].real() << "," << u[i].imag() << "\n";
  }
}

int run_check_potential(const RunConfig& c, RunReport& rr, StageTimer& timer) {
  const Grid grid =
      build_box_grid(c.xgrid.dim, c.xgrid.extent, c.xgrid.points_per_axis);
  const Field f = build_source(c, grid);
  const double c_hls = c.c_hls > 0.0 ? c.c_hls : c_hls_default();
  const AssumptionReport rep = timer.time("check_assumption", [&] {
    return check_assumption_1_1(c.potential, f, grid, c_hls);
  });
  rr.report["assumption"] = assumption_json(rep);
  rr.report["verdict"] = rep.passed ? "pass" : "fail";
  return rep.passed ? 0 : 2;
}

int run_scattering_state(const RunConfig& c, RunReport& rr,
                         StageTimer& timer) {
  const Grid grid =
      build_box_grid(c.xgrid.dim, c.xgrid.extent, c.xgrid.points_per_axis);
  const Vec3 k{c.k[0], c.k[1], c.k[2]};

  ScatteringState state;
  bool cached = false;
  std::string cache_path;
  if (!c.cache_dir.empty()) {
    cache_path = state_cache_path(c.cache_dir, c.potential, grid, k);
    cached = load_state(cache_path, state);
  }
  if (!cached) {
    state = timer.time("scattering_state", [&] {
      return scattering_state(k, c.potential, grid, c.tol, c.max_iter);
    });
    if (!cache_path.empty()) save_state(cache_path, state);
  }

  const std::string state_out = c.out_dir + "/state.bin";
  save_state(state_out, state);
  note_artifact(rr.report, state_out);

  // Certified geometric tail after each partial sum.
  const double q = state.q_norm_bound;
  const double free_sup = std::pow(2.0 * pi, -1.5);
  if (q < 1.0) {
    for (int n = 0; n <= state.iterations; ++n)
      rr.neumann_tail.push_back(std::pow(q, n + 1) / (1.0 - q) * free_sup);
  }

  rr.report["scattering"] = {{"k", c.k},
                             {"iterations", state.iterations},
                             {"series_tail_bound", state.series_tail_bound},
                             {"sup_norm", state.sup_norm},
                             {"q_norm_bound", state.q_norm_bound},
                             {"residual_sup", state.residual_sup},
                             {"wavelength_resolved", state.wavelength_resolved},
                             {"cache_hit", cached}};
  rr.report["verdict"] = "pass";
  if (!rr.neumann_tail.empty()) {
    emit_plot_data(rr, "neumann_tail", c.out_dir);
    note_artifact(rr.report, c.out_dir + "/neumann_tail.csv");
  }
  return 0;
}

int run_solve_h(const RunConfig& c, RunReport& rr, StageTimer& timer) {
  const Grid grid =
      build_box_grid(c.xgrid.dim, c.xgrid.extent, c.xgrid.points_per_axis);
  const Field f = build_source(c, grid);

  const SolvabilityReport rep = timer.time("check_solvability", [&] {
    return check_solvability(f, c.a, c.potential, grid, c.sphere_resolution,
                             c.threshold, c.tol);
  });
  stash_sphere(rr, rep.sphere, rep.sphere_values);
  rr.report["solvability"] = solvability_json(rep);
  rr.report["verdict"] = verdict_name(rep.verdict);
  emit_plot_data(rr, "sphere", c.out_dir);
  note_artifact(rr.report, c.out_dir + "/sphere_restriction.csv");

  if (rep.verdict != Verdict::solvable) return 2;

  const Grid kgrid = dual_grid(grid);
  const double sigma =
      c.sigma > 0.0
          ? c.sigma
          : default_sigma(c.a, rep.grad_bound, lp_norm(f, 2.0, grid), kgrid);
  const SolutionField sol = timer.time("solve", [&] {
    return solve(f, c.a, c.potential, grid, kgrid, sigma, c.tol);
  });
  rr.report["solution"] = {{"residual_l2", sol.residual_l2},
                           {"sigma", sol.sigma},
                           {"split_norm_outer", sol.split_norm_outer},
                           {"split_norm_u1", sol.split_norm_u1},
                           {"split_norm_u2_dropped", sol.split_norm_u2_dropped}};
  const std::string sol_csv = c.out_dir + "/solution.csv";
  write_solution_csv(sol_csv, sol.values, grid);
  note_artifact(rr.report, sol_csv);
  return 0;
}

int run_witness(const RunConfig& c, RunReport& rr, StageTimer& timer) {
  const Grid grid =
      build_box_grid(c.xgrid.dim, c.xgrid.extent, c.xgrid.points_per_axis);
  const Field f = build_source(c, grid);

  const SolvabilityReport rep = timer.time("check_solvability", [&] {
    return check_solvability(f, c.a, c.potential, grid, c.sphere_resolution,
                             c.threshold, c.tol);
  });
  rr.report["solvability"] = solvability_json(rep);
  rr.report["verdict"] = verdict_name(rep.verdict);

  WitnessOptions opts;
  opts.sigma0_factor = c.witness_sigma0_factor;
  opts.radial_nodes = c.witness_radial_nodes;
  opts.sphere_resolution = c.witness_sphere_resolution;
  const std::vector<double> norms = timer.time("divergence_witness", [&] {
    return divergence_witness(f, c.a, c.potential, grid, c.witness_sigmas,
                              opts, c.tol);
  });
  rr.witness_sigmas = c.witness_sigmas;
  rr.witness_norms = norms;

  std::vector<double> ratios;
  for (std::size_t i = 1; i < norms.size(); ++i)
    ratios.push_back(norms[i - 1] > 0.0 ? norms[i] / norms[i - 1] : 0.0);
  rr.report["witness"] = {{"sigmas", c.witness_sigmas},
                          {"norms", norms},
                          {"ratios", ratios}};
  emit_plot_data(rr, "witness", c.out_dir);
  note_artifact(rr.report, c.out_dir + "/witness.csv");
  return 0;
}

// Tuned potential (when spectrum.tune.enabled) plus the patch file record.
PotentialSpec maybe_tune(const RunConfig& c, const Grid& ygrid, json& report,
                         StageTimer& timer) {
  if (!c.tune) return c.potential;
  TuneParameter param;
  if (c.tune_parameter == "v_plus")
    param = TuneParameter::v_plus;
  else if (c.tune_parameter == "beta")
    param = TuneParameter::beta;
  else
    throw ConfigError("spectrum.tune.parameter must be v_plus or beta, got " +
                      c.tune_parameter);
  const TuneResult tr = timer.time("tune_zero_mode", [&] {
    return tune_zero_mode(c.potential, ygrid, c.tune_target_index, c.zero_tol,
                          param, c.tune_lo, c.tune_hi);
  });
  report["tuning"] = {{"parameter", c.tune_parameter},
                      {"value", tr.value},
                      {"achieved_e", tr.achieved_e},
                      {"iterations", tr.iterations}};
  const std::string patch_path = c.out_dir + "/config_patch.json";
  json patch;
  patch["potential"]["params"][c.tune_parameter] = tr.value;
  open_out(patch_path) << patch.dump(2) << "\n";
  note_artifact(report, patch_path);
  return tr.spec;
}

int run_spectrum(const RunConfig& c, RunReport& rr, StageTimer& timer) {
  const Grid ygrid =
      build_box_grid(c.ygrid.dim, c.ygrid.extent, c.ygrid.points_per_axis);
  const PotentialSpec V = maybe_tune(c, ygrid, rr.report, timer);
  const HOperator h = discretize_h(V, ygrid);

  SpectrumDecomposition sd;
  try {
    sd = timer.time("spectrum", [&] {
      return spectrum_below_vplus(h, c.v_plus, c.zero_tol);
    });
  } catch (const SpectrumAssumptionError& e) {
    rr.report["verdict"] = "assumption_violation";
    rr.report["error"] = e.what();
    return 2;
  }

  json channels = json::array();
  for (std::size_t i = 0; i < sd.eigenvectors.size(); ++i) {
    const auto [j, k] = sd.channel_index[i];
    channels.push_back({{"j", j},
                        {"k", k},
                        {"eigenvalue", sd.eigenvalues[std::size_t(j - 1)]}});
    rr.eigenvalue_ladder.push_back(sd.eigenvalues[std::size_t(j - 1)]);

    const std::string vec_csv = c.out_dir + "/eigvec_" + std::to_string(j) +
                                "_" + std::to_string(k) + ".csv";
    std::ofstream os = open_out(vec_csv);
    os << "y,phi\n";
    std::vector<double> y(ygrid.dim);
    for (std::size_t m = 0; m < sd.eigenvectors[i].size(); ++m) {
      ygrid.node(m, y.data());
      os << y[0];
      for (int d = 1; d < ygrid.dim; ++d) os << ";" << y[d];
      os << "," << sd.eigenvectors[i][m] << "\n";
    }
    note_artifact(rr.report, vec_csv);
  }

  rr.report["spectrum"] = {
      {"v_plus", sd.v_plus},
      {"zero_tol", sd.zero_tol},
      {"cluster_tol", sd.cluster_tol},
      {"eigenvalues", sd.eigenvalues},
      {"multiplicities", sd.multiplicities},
      {"channels", channels},
      {"zero_index", sd.zero_index ? json(*sd.zero_index) : json()},
      {"e_next", sd.e_next}};
  rr.report["verdict"] = "pass";
  emit_plot_data(rr, "eigenvalues", c.out_dir);
  note_artifact(rr.report, c.out_dir + "/eigenvalues.csv");
  return 0;
}

json moment_json(const MomentReport& m) {
  json zero = json::array();
  for (const MomentCondition& mc : m.zero_channel)
    zero.push_back({{"id", mc.id},
                    {"value", mc.value},
                    {"threshold", mc.threshold},
                    {"pass", mc.pass}});
  json neg = json::array();
  for (const NegativeChannelReport& nc : m.negative_channels)
    neg.push_back({{"j", nc.j},
                   {"k", nc.k},
                   {"eigenvalue", nc.eigenvalue},
                   {"max_abs", nc.max_abs},
                   {"threshold", nc.threshold},
                   {"pass", nc.pass}});
  return {{"zero_channel", zero},
          {"negative_channels", neg},
          {"overall", m.overall}};
}

int run_solve_separable(const RunConfig& c, RunReport& rr, StageTimer& timer) {
  const Grid ygrid =
      build_box_grid(c.ygrid.dim, c.ygrid.extent, c.ygrid.points_per_axis);
  const Grid xgrid =
      build_box_grid(c.n, c.xgrid.extent, c.xgrid.points_per_axis);
  const PotentialSpec V = maybe_tune(c, ygrid, rr.report, timer);
  const HOperator h = discretize_h(V, ygrid);

  SpectrumDecomposition sd;
  try {
    sd = timer.time("spectrum", [&] {
      return spectrum_below_vplus(h, c.v_plus, c.zero_tol);
    });
  } catch (const SpectrumAssumptionError& e) {
    rr.report["verdict"] = "assumption_violation";
    rr.report["error"] = e.what();
    return 2;
  }
  const EigenSystem basis = timer.time("eigensolve", [&] {
    return eigensolve(h);
  });

  // g(x, y) = source(x) * phi(y); mode_index 0 selects the zero mode,
  // otherwise the 1-based channel-vector index.
  std::size_t mode;
  if (c.mode_index == 0) {
    if (!sd.zero_index) throw ConfigError("mode_index 0 needs a zero mode");
    std::size_t pos = 0;
    for (std::size_t i = 0; i < sd.channel_index.size(); ++i)
      if (sd.channel_index[i].first == *sd.zero_index) pos = i;
    mode = pos;
  } else {
    if (c.mode_index < 1 || std::size_t(c.mode_index) > sd.eigenvectors.size())
      throw ConfigError("mode_index out of range");
    mode = std::size_t(c.mode_index - 1);
  }
  const RealField& phi = sd.eigenvectors[mode];
  const std::size_t ny = ygrid.size();
  std::vector<double> x(xgrid.dim);
  Field g(xgrid.size() * ny);
  for (std::size_t ix = 0; ix < xgrid.size(); ++ix) {
    xgrid.node(ix, x.data());
    const double gx = c.source.eval(x.data(), xgrid.dim);
    for (std::size_t iy = 0; iy < ny; ++iy)
      g[ix * ny + iy] = gx * phi[iy];
  }

  SeparableOptions opts;
  opts.threshold = c.threshold;
  opts.delta = c.delta;
  opts.alpha = c.alpha;
  opts.sphere_resolution = c.sphere_resolution;
  const SeparableResult res = timer.time("solve_separable", [&] {
    return solve_full(g, sd, basis, h, c.n, xgrid, ygrid, opts);
  });

  rr.report["weighted_norm"] = {
      {"alpha", res.weighted.alpha},
      {"n", res.weighted.n},
      {"required_alpha", res.weighted.required_alpha},
      {"weighted_norm", res.weighted.weighted_norm},
      {"plain_norm", res.weighted.plain_norm},
      {"passed", res.weighted.passed}};
  rr.report["moments"] = moment_json(res.moments);
  rr.report["solution"] = {{"residual_l2", res.solution.residual_l2},
                           {"u_plus_norm", res.solution.u_plus_norm},
                           {"u_zero_norm", res.solution.u_zero_norm},
                           {"u_minus_norm", res.solution.u_minus_norm}};

  for (const NegativeChannelReport& nc : res.moments.negative_channels) {
    const std::string ch_csv = c.out_dir + "/channel_" + std::to_string(nc.j) +
                               "_" + std::to_string(nc.k) + ".csv";
    std::ofstream os = open_out(ch_csv);
    for (int d = 0; d < nc.sphere.dim; ++d) os << "k" << d + 1 << ",";
    os << "abs_v\n";
    for (std::size_t i = 0; i < nc.sphere.count(); ++i) {
      for (int d = 0; d < nc.sphere.dim; ++d) os << nc.sphere.point(i)[d] << ",";
      os << std::abs(nc.values[i]) << "\n";
    }
    note_artifact(rr.report, ch_csv);
  }

  const bool ok = res.weighted.passed && res.moments.overall;
  rr.report["verdict"] = ok ? "solvable" : "condition_failure";
  if (!ok) return 2;

  Field u(g.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    u[i] = res.solution.u_plus[i] + res.solution.u_zero[i] +
           res.solution.u_minus[i];
  std::vector<int> shape(std::size_t(xgrid.dim) + 1, xgrid.points_per_axis);
  shape.back() = ygrid.points_per_axis;
  const std::string sol_bin = c.out_dir + "/solution.bin";
  save_field(sol_bin, u, shape);
  note_artifact(rr.report, sol_bin);
  return 0;
}

}  // namespace

Field manufactured_rhs(const PotentialSpec& V, double a, double c_width,
                       const Grid& grid) {
  const double cw = c_width;
  const int d = grid.dim;
  return sample(grid, [&](const double* x) {
    double r2 = 0.0;
    for (int i = 0; i < d; ++i) r2 += x[i] * x[i];
    const double u = std::exp(-cw * r2);
    // -Laplace e^{-c r^2} = (2 d c - 4 c^2 r^2) e^{-c r^2}
    return (2.0 * d * cw - 4.0 * cw * cw * r2 + V.eval(x, d) - a) * u;
  });
}

Field build_source(const RunConfig& c, const Grid& xgrid) {
  if (c.source_manufactured) {
    Field f = manufactured_rhs(c.potential, c.a, c.source.c, xgrid);
    if (c.source.amplitude != 1.0)
      for (cplx& v : f) v *= c.source.amplitude;
    return f;
  }
  return eval_field(c.source, xgrid);
}

RunReport run(const RunConfig& config) {
  RunReport rr;
  rr.report["config"] = config_echo(config);
  rr.report["subcommand"] = config.subcommand;
  rr.report["artifacts"] = json::array();
  rr.report["timings"] = json::object();
  StageTimer timer(rr.report["timings"]);

  try {
    if (config.subcommand == "check-potential")
      rr.exit_code = run_check_potential(config, rr, timer);
    else if (config.subcommand == "scattering-state")
      rr.exit_code = run_scattering_state(config, rr, timer);
    else if (config.subcommand == "solve-h")
      rr.exit_code = run_solve_h(config, rr, timer);
    else if (config.subcommand == "spectrum")
      rr.exit_code = run_spectrum(config, rr, timer);
    else if (config.subcommand == "solve-separable")
      rr.exit_code = run_solve_separable(config, rr, timer);
    else if (config.subcommand == "witness")
      rr.exit_code = run_witness(config, rr, timer);
    else
      throw ConfigError("unknown subcommand: " + config.subcommand);
  } catch (const ConditionFailure& e) {
    rr.report["verdict"] = "condition_failure";
    rr.report["error"] = e.what();
    rr.exit_code = 2;
  }

  const std::string report_path = config.out_dir + "/report.json";
  note_artifact(rr.report, report_path);
  open_out(report_path) << rr.report.dump(2) << "\n";
  return rr;
}

void emit_plot_data(const RunReport& report, const std::string& which,
                    const std::string& out_dir) {
  if (which == "sphere") {
    if (report.sphere_magnitude.empty())
      throw Error("plot data 'sphere' unavailable: stage did not run");
    std::ofstream os = open_out(out_dir + "/sphere_restriction.csv");
    os << "theta,phi,abs_ft\n";
    for (std::size_t i = 0; i < report.sphere_magnitude.size(); ++i)
      os << report.sphere_angle_theta[i] << "," << report.sphere_angle_phi[i]
         << "," << report.sphere_magnitude[i] << "\n";
  } else if (which == "witness") {
    if (report.witness_norms.empty())
      throw Error("plot data 'witness' unavailable: stage did not run");
    std::ofstream os = open_out(out_dir + "/witness.csv");
    os << "sigma,norm\n";
    for (std::size_t i = 0; i < report.witness_norms.size(); ++i)
      os << report.witness_sigmas[i] << "," << report.witness_norms[i] << "\n";
  } else if (which == "neumann_tail") {
    if (report.neumann_tail.empty())
      throw Error("plot data 'neumann_tail' unavailable: stage did not run");
    std::ofstream os = open_out(out_dir + "/neumann_tail.csv");
    os << "iteration,tail_bound\n";
    for (std::size_t i = 0; i < report.neumann_tail.size(); ++i)
      os << i << "," << report.neumann_tail[i] << "\n";
  } else if (which == "eigenvalues") {
    if (report.eigenvalue_ladder.empty())
      throw Error("plot data 'eigenvalues' unavailable: stage did not run");
    std::ofstream os = open_out(out_dir + "/eigenvalues.csv");
    os << "index,eigenvalue\n";
    for (std::size_t i = 0; i < report.eigenvalue_ladder.size(); ++i)
      os << i + 1 << "," << report.eigenvalue_ladder[i] << "\n";
  } else {
    throw ConfigError("unknown plot kind: " + which);
  }
}

}  // namespace nfsolv
