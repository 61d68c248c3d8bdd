#include "nfsolv/grid.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

namespace nfsolv {

std::size_t Grid::size() const {
  std::size_t s = 1;
  for (int d = 0; d < dim; ++d) s *= axis.size();
  return s;
}

double Grid::volume() const {
  return std::pow(2.0 * extent, dim);
}

void Grid::node(std::size_t i, double* out) const {
  const std::size_t n = axis.size();
  for (int d = dim - 1; d >= 0; --d) {
    out[d] = axis[i % n];
    i /= n;
  }
}

double Grid::weight(std::size_t i) const {
  const std::size_t n = axis.size();
  double w = 1.0;
  for (int d = 0; d < dim; ++d) {
    w *= axis_weights[i % n];
    i /= n;
  }
  return w;
}

void Grid::decode(std::size_t i, int* out) const {
  const std::size_t n = axis.size();
  for (int d = dim - 1; d >= 0; --d) {
    out[d] = int(i % n);
    i /= n;
  }
}

std::size_t Grid::encode(const int* idx) const {
  const std::size_t n = axis.size();
  std::size_t i = 0;
  for (int d = 0; d < dim; ++d) i = i * n + std::size_t(idx[d]);
  return i;
}

Grid build_box_grid(int dim, double extent, int points_per_axis,
                    std::size_t node_budget) {
  if (dim < 1) throw ConfigError("build_box_grid: dim must be >= 1");
  if (extent <= 0.0) throw ConfigError("build_box_grid: extent must be > 0");
  if (points_per_axis < 2)
    throw ConfigError("build_box_grid: points_per_axis must be >= 2");
  double count = 1.0;
  for (int d = 0; d < dim; ++d) count *= points_per_axis;
  if (count > double(node_budget))
    throw BudgetError("build_box_grid: node count " + std::to_string(count) +
                      " exceeds budget " + std::to_string(node_budget));

  Grid g;
  g.dim = dim;
  g.extent = extent;
  g.points_per_axis = points_per_axis;
  const int n = points_per_axis;
  const double h = 2.0 * extent / (n - 1);
  g.axis.resize(n);
  g.axis_weights.resize(n);
  for (int i = 0; i < n; ++i) {
    g.axis[i] = -extent + h * i;
    g.axis_weights[i] = (i == 0 || i == n - 1) ? 0.5 * h : h;
  }
  // Enforce exact negation symmetry (the midpoint of an odd axis is 0).
  if (n % 2 == 1) g.axis[n / 2] = 0.0;
  return g;
}

Grid dual_grid(const Grid& xgrid) {
  const int n = xgrid.points_per_axis;
  const double h = xgrid.spacing();
  const double dk = 2.0 * pi / (n * h);
  const int m = (n % 2 == 0) ? n - 1 : n;  // symmetric subset of DFT frequencies
  Grid k;
  k.dim = xgrid.dim;
  k.points_per_axis = m;
  k.extent = dk * ((m - 1) / 2);
  k.axis.resize(m);
  k.axis_weights.resize(m);
  for (int i = 0; i < m; ++i) {
    k.axis[i] = dk * (i - (m - 1) / 2);
    k.axis_weights[i] = (i == 0 || i == m - 1) ? 0.5 * dk : dk;
  }
  k.axis[(m - 1) / 2] = 0.0;
  return k;
}

cplx integrate(const Field& field_values, const Grid& grid) {
  if (field_values.size() != grid.size())
    throw ConfigError("integrate: field length does not match node count");
  cplx acc = 0.0;
  for (std::size_t i = 0; i < field_values.size(); ++i)
    acc += grid.weight(i) * field_values[i];
  return acc;
}

double integrate(const RealField& field_values, const Grid& grid) {
  if (field_values.size() != grid.size())
    throw ConfigError("integrate: field length does not match node count");
  double acc = 0.0;
  for (std::size_t i = 0; i < field_values.size(); ++i)
    acc += grid.weight(i) * field_values[i];
  return acc;
}

double sphere_surface_measure(int dim, double radius) {
  return 2.0 * std::pow(pi, 0.5 * dim) / std::tgamma(0.5 * dim) *
         std::pow(radius, dim - 1);
}

SphereSampling sphere_sampling(int dim, double radius, int resolution) {
  if (dim < 1) throw ConfigError("sphere_sampling: dim must be >= 1");
  if (radius < 0.0) throw ConfigError("sphere_sampling: radius must be >= 0");
  SphereSampling s;
  s.dim = dim;
  s.radius = radius;
  if (radius == 0.0) {
    s.points.assign(std::size_t(dim), 0.0);
    s.weights.assign(1, 1.0);
    return s;
  }
  if (dim == 1) {
    s.points = {-radius, radius};
    s.weights = {1.0, 1.0};
    return s;
  }
  if (resolution < 2) throw ConfigError("sphere_sampling: resolution must be >= 2");
  if (dim == 2) {
    const int m = resolution;
    const double w = 2.0 * pi * radius / m;
    for (int i = 0; i < m; ++i) {
      const double th = 2.0 * pi * i / m;
      s.points.push_back(radius * std::cos(th));
      s.points.push_back(radius * std::sin(th));
      s.weights.push_back(w);
    }
    return s;
  }
  if (dim == 3) {
    // Fibonacci spiral with equal weights.
    const std::size_t m = std::size_t(resolution) * resolution;
    const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
    const double w = 4.0 * pi * radius * radius / double(m);
    for (std::size_t i = 0; i < m; ++i) {
      const double z = 1.0 - (2.0 * double(i) + 1.0) / double(m);
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double th = 2.0 * pi * double(i) / golden;
      s.points.push_back(radius * r * std::cos(th));
      s.points.push_back(radius * r * std::sin(th));
      s.points.push_back(radius * z);
      s.weights.push_back(w);
    }
    return s;
  }
  // dim >= 4: product of uniform angle grids with the sin-power Jacobian,
  // weights renormalized so they sum to the analytic surface measure.
  const int m = resolution;
  const int nang = dim - 1;  // angles: theta_1..theta_{dim-2} in [0,pi], phi in [0,2pi)
  std::vector<int> idx(nang, 0);
  double raw_sum = 0.0;
  std::vector<double> raw_w;
  for (;;) {
    std::vector<double> ang(nang);
    for (int a = 0; a < nang - 1; ++a) ang[a] = pi * (idx[a] + 0.5) / m;
    ang[nang - 1] = 2.0 * pi * idx[nang - 1] / m;
    double w = 1.0;
    for (int a = 0; a < nang - 1; ++a)
      w *= std::pow(std::sin(ang[a]), nang - 1 - a) * (pi / m);
    w *= 2.0 * pi / m;
    // spherical coordinates: x_a = r sin(th_1)..sin(th_{a-1}) cos(th_a)
    double c = radius;
    for (int a = 0; a < nang - 1; ++a) {
      s.points.push_back(c * std::cos(ang[a]));
      c *= std::sin(ang[a]);
    }
    s.points.push_back(c * std::cos(ang[nang - 1]));
    s.points.push_back(c * std::sin(ang[nang - 1]));
    raw_w.push_back(w);
    raw_sum += w;
    int a = nang - 1;
    while (a >= 0 && ++idx[a] == m) idx[a--] = 0;
    if (a < 0) break;
  }
  const double target = sphere_surface_measure(dim, radius);
  const double scale = target / raw_sum;
  s.weights.resize(raw_w.size());
  for (std::size_t i = 0; i < raw_w.size(); ++i) s.weights[i] = raw_w[i] * scale;
  return s;
}

void write_nodes_csv(const Grid& grid, std::ostream& os) {
  std::vector<double> x(grid.dim);
  for (int d = 0; d < grid.dim; ++d) os << "x" << d << ",";
  os << "weight\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    grid.node(i, x.data());
    for (int d = 0; d < grid.dim; ++d) os << x[d] << ",";
    os << grid.weight(i) << "\n";
  }
}

}  // namespace nfsolv
