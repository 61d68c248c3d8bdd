#pragma once

#include <cstddef>
#include <iosfwd>

#include "nfsolv/common.hpp"

namespace nfsolv {

// Uniform tensor-product box grid on [-extent, extent]^dim with trapezoidal
// quadrature weights. Nodes are stored implicitly through the (identical)
// per-axis coordinate table; the flat node index is row-major with the last
// axis fastest.
struct Grid {
  int dim = 0;
  double extent = 0.0;
  int points_per_axis = 0;
  std::vector<double> axis;          // coordinates along one axis
  std::vector<double> axis_weights;  // 1-D trapezoid weights

  std::size_t size() const;
  double spacing() const { return axis.size() > 1 ? axis[1] - axis[0] : 0.0; }
  double volume() const;

  // Writes the dim coordinates of flat node `i` into out[0..dim-1].
  void node(std::size_t i, double* out) const;
  double weight(std::size_t i) const;

  // Per-axis index of a flat node (last axis fastest).
  void decode(std::size_t i, int* out) const;
  std::size_t encode(const int* idx) const;
};

inline constexpr std::size_t default_node_budget = std::size_t(1) << 24;

Grid build_box_grid(int dim, double extent, int points_per_axis,
                    std::size_t node_budget = default_node_budget);

// Fourier-dual grid of a box grid: odd point count, spacing 2*pi/(N*h), with
// nodes on the DFT frequencies of the x-grid so transforms reduce to FFTs.
Grid dual_grid(const Grid& xgrid);

cplx integrate(const Field& field_values, const Grid& grid);
double integrate(const RealField& field_values, const Grid& grid);

// Quadrature-weighted sampling of the sphere S^dim_radius (the sphere of the
// given radius in R^dim). dim = 1 is the two-point set {-r, +r} with unit
// weights; dim = 2 uses uniform angles, dim = 3 a Fibonacci spiral, and
// dim >= 4 a product of angle grids with Jacobian weights normalized to the
// analytic surface measure.
struct SphereSampling {
  int dim = 0;
  double radius = 0.0;
  std::vector<double> points;  // flattened, point-major: [p0_x, p0_y, ..., p1_x, ...]
  std::vector<double> weights;

  std::size_t count() const { return weights.size(); }
  const double* point(std::size_t i) const { return points.data() + std::size_t(dim) * i; }
};

SphereSampling sphere_sampling(int dim, double radius, int resolution);

// Surface measure |S^dim_r| = 2 pi^{dim/2} / Gamma(dim/2) * r^{dim-1}.
double sphere_surface_measure(int dim, double radius);

// One row per node: coordinates then weight.
void write_nodes_csv(const Grid& grid, std::ostream& os);

}  // namespace nfsolv
