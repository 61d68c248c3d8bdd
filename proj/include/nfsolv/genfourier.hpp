#pragma once

#include "nfsolv/common.hpp"
#include "nfsolv/fft.hpp"
#include "nfsolv/grid.hpp"
#include "nfsolv/potential.hpp"
#include "nfsolv/scattering.hpp"

namespace nfsolv {

// Generalized Fourier transform on a Cartesian k-grid; optionally carries the
// restriction to a sphere |k| = sqrt(a).
struct GenTransform {
  Grid kgrid;
  Field values;
  bool has_sphere = false;
  SphereSampling sphere;
  Field sphere_values;
};

struct GradBoundReport {
  double t1_bound = 0.0;  // (2pi)^{-3/2} ||x f||_L1
  double t2_bound = 0.0;
  double t3_bound = 0.0;  // (4pi (2pi)^{3/2})^{-1} ||f||_L1 (1-q)^{-2} ||V||_L1
  double total = 0.0;
};

// Spacing of the modulus table used to interpolate the V-dependent Neumann
// correction of the transform across k-shells (the classical FFT part is
// always exact on the grid).
inline constexpr double kappa_table_spacing = 0.12;

GenTransform forward(const Field& f, const PotentialSpec& V, const Grid& kgrid,
                     const Grid& xgrid, double tol);

// f-tilde sampled exactly at the sphere points: a dedicated adjoint solve at
// the sphere's modulus, no interpolation.
Field restrict_to_sphere(const Field& f, const PotentialSpec& V,
                         const SphereSampling& sphere, const Grid& xgrid,
                         double tol);

Field inverse(const GenTransform& t, const PotentialSpec& V, const Grid& xgrid,
              double tol);

GradBoundReport grad_sup_bound(const Field& f, const PotentialSpec& V,
                               const Grid& xgrid);

}  // namespace nfsolv
