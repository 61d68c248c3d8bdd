#include "nfsolv/potential.hpp"

#include <algorithm>
#include <cmath>

#include "nfsolv/scattering.hpp"

namespace nfsolv {

namespace {
double norm2(const double* x, int dim) {
  double s = 0.0;
  for (int d = 0; d < dim; ++d) s += x[d] * x[d];
  return s;
}
}  // namespace

double PotentialSpec::eval(const double* x, int dim) const {
  switch (family) {
    case PotentialFamily::zero:
      return 0.0;
    case PotentialFamily::gaussian:
      return -beta * std::exp(-c * norm2(x, dim));
    case PotentialFamily::poschl_teller: {
      if (dim != 1)
        throw ConfigError("poschl_teller potential is one-dimensional");
      const double s = 1.0 / std::cosh(x[0]);
      return v_plus - lambda * (lambda + 1.0) * s * s;
    }
    case PotentialFamily::rational_decay:
      return beta / (1.0 + std::pow(std::sqrt(norm2(x, dim)), q));
    case PotentialFamily::gaussian_well:
      return v_plus - beta * std::exp(-c * norm2(x, dim));
  }
  throw ConfigError("unknown potential family");
}

double PotentialSpec::asymptote() const {
  return decays_to_zero() ? 0.0 : v_plus;
}

double SourceSpec::eval(const double* x, int dim) const {
  switch (family) {
    case Family::zero:
      return 0.0;
    case Family::gaussian:
      return amplitude * std::exp(-c * norm2(x, dim));
    case Family::x1_gaussian:
      return x[0] * std::exp(-c * norm2(x, dim));
    case Family::hermite: {
      double rest = 0.0;
      for (int d = 1; d < dim; ++d) rest += x[d] * x[d];
      return (x[0] * x[0] - 0.5) * std::exp(-x[0] * x[0]) * std::exp(-c * rest);
    }
    case Family::ball:
      return norm2(x, dim) <= radius * radius ? amplitude : 0.0;
  }
  throw ConfigError("unknown source family");
}

Field eval_field(const PotentialSpec& spec, const Grid& grid) {
  return sample(grid, [&](const double* x) { return spec.eval(x, grid.dim); });
}

Field eval_field(const SourceSpec& spec, const Grid& grid) {
  return sample(grid, [&](const double* x) { return spec.eval(x, grid.dim); });
}

double lp_norm(const Field& field, double p, const Grid& grid) {
  if (field.size() != grid.size())
    throw ConfigError("lp_norm: field length does not match node count");
  if (p == lp_inf) {
    double m = 0.0;
    for (const cplx& v : field) m = std::max(m, std::abs(v));
    return m;
  }
  if (p < 1.0) throw ConfigError("lp_norm: p must be >= 1 (or lp_inf)");
  double acc = 0.0;
  for (std::size_t i = 0; i < field.size(); ++i)
    acc += grid.weight(i) * std::pow(std::abs(field[i]), p);
  return std::pow(acc, 1.0 / p);
}

double c_hls_default() {
  return std::pow(pi, 1.5) * std::pow(std::sqrt(pi) / 4.0, -1.0 / 3.0);
}

AssumptionReport check_assumption_1_1(const PotentialSpec& V, const Field& f,
                                      const Grid& grid, double c_hls) {
  if (!V.decays_to_zero())
    throw ConfigError("check_assumption_1_1: potential must decay to zero");
  if (c_hls <= 0.0) throw ConfigError("check_assumption_1_1: c_hls must be > 0");

  AssumptionReport r;
  // Norms of the analytic potential on all of R^3, not the truncated box:
  // the certificate must bound the continuum operator.
  r.norm_inf = potential_lp_norm(V, lp_inf);
  r.norm_4_3 = potential_lp_norm(V, 4.0 / 3.0);
  r.norm_3_2 = potential_lp_norm(V, 1.5);
  r.norm_1 = potential_lp_norm(V, 1.0);
  r.smallness_value = std::pow(4.0, 1.0 / 9.0) * (9.0 / 8.0) *
                      std::pow(4.0 * pi, -2.0 / 3.0) *
                      std::pow(r.norm_inf, 1.0 / 9.0) *
                      std::pow(r.norm_4_3, 8.0 / 9.0);
  r.c_hls_used = c_hls;
  r.hls_value = std::sqrt(c_hls) * r.norm_3_2;

  // Decay envelope |V(x)| <= C / (1 + |x|^{3.5+eps}); eps from the family's
  // analytic decay rate, C measured over radial shells.
  switch (V.family) {
    case PotentialFamily::zero:
    case PotentialFamily::gaussian:
      r.envelope_eps = 0.5;
      r.decay_ok = true;
      break;
    case PotentialFamily::rational_decay:
      r.envelope_eps = V.q - 3.5;
      r.decay_ok = r.envelope_eps > 0.0;
      break;
    case PotentialFamily::poschl_teller:
    case PotentialFamily::gaussian_well:
      break;
  }
  {
    const int shells = 256;
    double C = 0.0;
    std::vector<double> x(grid.dim, 0.0);
    const double eps = std::max(r.envelope_eps, 0.0);
    for (int s = 0; s <= shells; ++s) {
      const double rr = grid.extent * std::sqrt(double(grid.dim)) * s / shells;
      x[0] = rr;  // families are radial, one ray suffices
      const double v = std::abs(V.eval(x.data(), grid.dim));
      C = std::max(C, v * (1.0 + std::pow(rr, 3.5 + eps)));
    }
    r.envelope_C = C;
  }

  r.f_l2 = lp_norm(f, 2.0, grid);
  {
    Field xf(f.size());
    std::vector<double> x(grid.dim);
    for (std::size_t i = 0; i < f.size(); ++i) {
      grid.node(i, x.data());
      xf[i] = std::sqrt(norm2(x.data(), grid.dim)) * f[i];
    }
    r.xf_l1 = lp_norm(xf, 1.0, grid);
  }
  r.f_l1_bound = r.f_l2 * std::sqrt(4.0 * pi / 3.0) + r.xf_l1;

  r.passed = r.smallness_value < 1.0 && r.hls_value < 4.0 * pi && r.decay_ok &&
             std::isfinite(r.f_l2) && std::isfinite(r.xf_l1);
  return r;
}

double fact1_l1_bound(const Field& f, const Grid& grid) {
  const double l2 = lp_norm(f, 2.0, grid);
  Field xf(f.size());
  std::vector<double> x(grid.dim);
  for (std::size_t i = 0; i < f.size(); ++i) {
    grid.node(i, x.data());
    xf[i] = std::sqrt(norm2(x.data(), grid.dim)) * f[i];
  }
  const double xf1 = lp_norm(xf, 1.0, grid);
  const double bound = l2 * std::sqrt(4.0 * pi / 3.0) + xf1;
  const double l1 = lp_norm(f, 1.0, grid);
  if (l1 > bound * (1.0 + 1e-10) + 1e-12)
    throw Error("fact1_l1_bound: measured L1 norm exceeds the bound");
  return bound;
}

double rollnik_norm(const Field& V, const Grid& grid, std::size_t pair_budget) {
  if (grid.dim != 3) throw ConfigError("rollnik_norm: grid must be 3-dimensional");
  const std::size_t m = grid.size();
  if (m * m > pair_budget)
    throw BudgetError("rollnik_norm: pair count exceeds budget");

  std::vector<double> absv(m), w(m);
  std::vector<double> xs(3 * m);
  for (std::size_t i = 0; i < m; ++i) {
    absv[i] = std::abs(V[i]);
    w[i] = grid.weight(i);
    grid.node(i, &xs[3 * i]);
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (absv[i] == 0.0) continue;
    const double* xi = &xs[3 * i];
    double row = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i || absv[j] == 0.0) continue;
      const double* xj = &xs[3 * j];
      const double d2 = sqr(xi[0] - xj[0]) + sqr(xi[1] - xj[1]) + sqr(xi[2] - xj[2]);
      row += w[j] * absv[j] / d2;
    }
    // Self-pair: analytic integral of 1/|x-y|^2 over a ball of the cell's
    // volume, int 1/r^2 4 pi r^2 dr = 4 pi r_eq.
    const double r_eq = std::cbrt(3.0 * w[i] / (4.0 * pi));
    row += absv[i] * 4.0 * pi * r_eq;
    acc += w[i] * absv[i] * row;
  }
  return acc;
}

}  // namespace nfsolv
