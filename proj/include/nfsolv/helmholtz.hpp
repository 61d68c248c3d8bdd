#pragma once

#include "nfsolv/genfourier.hpp"
#include "nfsolv/grid.hpp"
#include "nfsolv/potential.hpp"

namespace nfsolv {

enum class Verdict { solvable, not_solvable, indeterminate };

const char* verdict_name(Verdict v);

struct SolvabilityReport {
  double a = 0.0;
  SphereSampling sphere;   // radius sqrt(a); the origin point when a = 0
  Field sphere_values;
  double max_abs = 0.0;
  double threshold = 0.0;
  Verdict verdict = Verdict::indeterminate;
  double grad_bound = 0.0;  // total of the gradient sup-norm bounds, sizes sigma
};

struct SolutionField {
  Field values;
  double residual_l2 = 0.0;   // ||H_a u - f|| / ||f|| on interior nodes
  double sigma = 0.0;
  double split_norm_outer = 0.0;       // || u-tilde chi_{layer complement} ||
  double split_norm_u1 = 0.0;          // subtracted piece inside the layer
  double split_norm_u2_dropped = 0.0;  // the dropped sphere-value piece
};

// threshold <= 0 selects the default 1e-6 * ||f||_L2.
SolvabilityReport check_solvability(const Field& f, double a,
                                    const PotentialSpec& V, const Grid& xgrid,
                                    int sphere_resolution, double threshold,
                                    double tol);

// Balances the layer subtraction error (grad_bound * sigma) against the layer
// volume; clamped to [2 dk, 0.9 sqrt(a)].
double default_sigma(double a, double grad_bound, double ft_l2,
                     const Grid& kgrid);

SolutionField solve(const Field& f, double a, const PotentialSpec& V,
                    const Grid& xgrid, const Grid& kgrid, double sigma,
                    double tol);

struct WitnessOptions {
  double sigma0_factor = 0.8;  // outer annulus edge at sigma0_factor * sqrt(a)
  int radial_nodes = 48;
  int sphere_resolution = 8;
};

// || f-tilde/(k^2-a) ||_L2 over the annulus sigma <= ||k| - sqrt(a)| <= sigma0,
// one value per requested sigma; grows like sigma^{-1/2} when the sphere
// restriction does not vanish.
std::vector<double> divergence_witness(const Field& f, double a,
                                       const PotentialSpec& V,
                                       const Grid& xgrid,
                                       const std::vector<double>& sigmas,
                                       const WitnessOptions& opts, double tol);

// Discrete H_a = -Laplace (7-point) + V - a applied on interior nodes;
// boundary entries are left as zero.
Field apply_H(const Field& u, const Field& Vfield, double a, const Grid& xgrid);

}  // namespace nfsolv
