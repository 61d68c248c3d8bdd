#pragma once

#include <string>

#include "nfsolv/common.hpp"
#include "nfsolv/grid.hpp"
#include "nfsolv/potential.hpp"
#include "nfsolv/spectrum.hpp"

namespace nfsolv {

struct WeightedNormReport {
  double alpha = 0.0;
  int n = 0;
  double required_alpha = 0.0;  // >5 for n=1, >6 for n=2, >n+2 for n>=3
  double weighted_norm = 0.0;   // || |x|^{alpha/2} g ||_L2
  double plain_norm = 0.0;
  bool passed = false;
};

struct MomentCondition {
  std::string id;
  double value = 0.0;  // |measured|
  double threshold = 0.0;
  bool pass = false;
};

struct NegativeChannelReport {
  int j = 0, k = 0;
  double eigenvalue = 0.0;
  SphereSampling sphere;
  Field values;
  double max_abs = 0.0;
  double threshold = 0.0;
  bool pass = false;
  // scalar condition entries: one per sphere point for n = 1, one
  // sphere-restriction entry for n >= 2
  int condition_count(int n) const { return n == 1 ? 2 : 1; }
};

struct MomentReport {
  std::vector<MomentCondition> zero_channel;
  std::vector<NegativeChannelReport> negative_channels;
  bool overall = false;
};

struct SeparableSolution {
  Field u_plus;     // on the (x,y) tensor grid
  Field u_zero;
  Field u_minus;    // sum over negative channels
  double residual_l2 = 0.0;
  double u_plus_norm = 0.0, u_zero_norm = 0.0, u_minus_norm = 0.0;
};

double required_alpha(int n);

WeightedNormReport weighted_norm_check(const Field& g, double alpha, int n,
                                       const Grid& xgrid, const Grid& ygrid);

// Lemma-3.1 division in the full discrete eigenbasis of h; asserts the
// ||u|| <= ||g_plus|| / e_next bound.
Field solve_positive_channel(const Field& g_plus, const EigenSystem& basis,
                             const SpectrumDecomposition& spec,
                             const Grid& xgrid, const Grid& ygrid);

// Zero channel -Laplace_x u0 = v0 with the n-dependent moment conditions.
// Returns the solution on the x-grid (empty when a condition fails).
std::pair<Field, std::vector<MomentCondition>> solve_zero_channel(
    const Field& v0, int n, const Grid& xgrid, double threshold,
    bool reconstruct = true);

// Negative channel (-Laplace_x + e_j) u = v with the sphere condition on
// S^n_{sqrt(-e_j)}.
std::pair<Field, NegativeChannelReport> solve_negative_channel(
    const Field& v_j, double e_j, int n, const Grid& xgrid, double delta,
    double threshold, int sphere_resolution = 32, bool reconstruct = true);

double default_delta(const Field& v_j, double e_j, const Grid& xgrid,
                     double threshold);

struct SeparableOptions {
  double threshold = 0.0;  // <= 0: 1e-6 * ||g||_L2
  double delta = 0.0;      // <= 0: default_delta per channel
  double alpha = 8.0;
  int sphere_resolution = 32;
  bool reconstruct = true;  // condition inventory only when false
};

struct SeparableResult {
  SeparableSolution solution;
  MomentReport moments;
  WeightedNormReport weighted;
};

SeparableResult solve_full(const Field& g, const SpectrumDecomposition& spec,
                           const EigenSystem& basis, const HOperator& h,
                           int n, const Grid& xgrid, const Grid& ygrid,
                           const SeparableOptions& opts);

}  // namespace nfsolv
