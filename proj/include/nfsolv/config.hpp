#pragma once

#include <array>
#include <string>

#include <json.hpp>

#include "nfsolv/common.hpp"
#include "nfsolv/potential.hpp"

namespace nfsolv {

struct GridBlock {
  int dim = 3;
  double extent = 8.0;
  int points_per_axis = 32;
};

// Full run configuration; every field has a default and unknown config keys
// are rejected (fail-closed parsing).
struct RunConfig {
  std::string subcommand;

  GridBlock xgrid{3, 8.0, 32};
  GridBlock ygrid{1, 20.0, 1025};

  PotentialSpec potential;
  SourceSpec source;
  bool source_manufactured = false;  // f := H_a applied to e^{-c|x|^2}

  // solver block
  double a = 1.0;
  double sigma = 0.0;  // <= 0 selects the default
  double delta = 0.0;  // <= 0 selects the default
  double alpha = 8.0;
  int n = 1;
  double tol = 1e-8;
  double threshold = 0.0;  // <= 0 selects 1e-6 * ||f||_L2
  int sphere_resolution = 16;
  int max_iter = 200;
  std::array<double, 3> k{0.0, 0.0, 1.0};
  int mode_index = 0;  // separable source: eigenvector factor (0 = zero mode)

  // witness block
  std::vector<double> witness_sigmas{0.1, 0.05, 0.025, 0.0125};
  double witness_sigma0_factor = 0.8;
  int witness_radial_nodes = 48;
  int witness_sphere_resolution = 8;

  // spectrum block
  double v_plus = 1.0;
  double zero_tol = 1e-8;
  bool tune = false;
  int tune_target_index = 2;
  std::string tune_parameter = "v_plus";
  double tune_lo = 0.5;
  double tune_hi = 1.5;

  double c_hls = 0.0;  // <= 0 selects the sharp-constant default

  std::string out_dir = "out";
  std::string cache_dir;
};

const char* potential_family_name(PotentialFamily f);
PotentialFamily potential_family_from_name(const std::string& s);
const char* source_family_name(SourceSpec::Family f);
SourceSpec::Family source_family_from_name(const std::string& s);

// Fail-closed parse: unknown keys anywhere raise ConfigError.
RunConfig parse_config(const nlohmann::json& j);

// Load from file and apply dotted overrides ("solver.a=2.0"); values are
// parsed as JSON scalars with a string fallback.
RunConfig load_config(const std::string& path,
                      const std::vector<std::string>& overrides);

nlohmann::json apply_override(nlohmann::json j, const std::string& assignment);

// Lossless echo of the effective configuration.
nlohmann::json config_echo(const RunConfig& c);

}  // namespace nfsolv
