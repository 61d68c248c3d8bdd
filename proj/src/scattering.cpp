#include "nfsolv/scattering.hpp"

#include <cmath>

namespace nfsolv {

double potential_lp_norm(const PotentialSpec& V, double p) {
  switch (V.family) {
    case PotentialFamily::zero:
      return 0.0;
    case PotentialFamily::gaussian:
      // || beta e^{-c p |x|^2} ||^p = beta^p (pi/(p c))^{3/2}
      if (p <= 0.0) return std::abs(V.beta);  // sup norm sentinel
      return std::abs(V.beta) * std::pow(pi / (p * V.c), 1.5 / p);
    case PotentialFamily::rational_decay: {
      if (p <= 0.0) return std::abs(V.beta);
      // radial quadrature of |beta|^p / (1+r^q)^p * 4 pi r^2
      const int n = 200000;
      const double rmax = 2000.0;
      const double h = rmax / n;
      double acc = 0.0;
      for (int i = 0; i <= n; ++i) {
        const double r = i * h;
        const double v = std::abs(V.beta) / (1.0 + std::pow(r, V.q));
        const double s = std::pow(v, p) * 4.0 * pi * r * r;
        acc += (i == 0 || i == n) ? 0.5 * s : s;
      }
      return std::pow(acc * h, 1.0 / p);
    }
    case PotentialFamily::poschl_teller:
    case PotentialFamily::gaussian_well:
      throw ConfigError("potential_lp_norm: potential must decay to zero");
  }
  throw ConfigError("unknown potential family");
}

QNormBound q_norm_bound(const PotentialSpec& V) {
  QNormBound r;
  if (V.family == PotentialFamily::zero) return r;
  const double vinf = potential_lp_norm(V, lp_inf);
  const double v43 = potential_lp_norm(V, 4.0 / 3.0);
  r.bound = std::pow(4.0, 1.0 / 9.0) * (9.0 / 8.0) *
            std::pow(4.0 * pi, -2.0 / 3.0) * std::pow(vinf, 1.0 / 9.0) *
            std::pow(v43, 8.0 / 9.0);
  if (v43 > 0.0)
    r.optimal_radius =
        std::pow(vinf * std::pow(4.0 * pi, 0.75) * 4.0 / v43, -4.0 / 9.0);
  return r;
}

QOperator::QOperator(const Field& V, const Grid& grid, double k_modulus)
    : grid_(grid), kappa_(k_modulus) {
  if (grid.dim != 3) throw ConfigError("QOperator: grid must be 3-dimensional");
  if (k_modulus < 0.0) throw ConfigError("QOperator: k_modulus must be >= 0");
  vw_.resize(V.size());
  for (std::size_t i = 0; i < V.size(); ++i) vw_[i] = V[i] * grid.weight(i);
  const double h = grid.spacing();
  const double kap = kappa_;
  auto kernel = [kap](double r) {
    return -(1.0 / (4.0 * pi)) * std::polar(1.0, kap * r) / r;
  };
  // Central cell: the trapezoid sum of h^3/|x-y| over the lattice differs
  // from the continuum integral by C0 h^2 per cell, and the e^{i kappa r}
  // phase contributes the exact i kappa |y| -> i kappa limit term.
  const cplx center = -(1.0 / (4.0 * pi)) * cplx(coulomb_lattice_c0 / h, kap);
  conv_ = std::make_unique<RadialConvolver>(grid, kernel, center);
}

Field QOperator::apply(const Field& phi) const {
  Field g(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) g[i] = vw_[i] * phi[i];
  return conv_->apply(g);
}

Field QOperator::apply_adjoint(const Field& psi) const {
  if (!conv_adj_) {
    const double h = grid_.spacing();
    const double kap = kappa_;
    auto kernel = [kap](double r) {
      return -(1.0 / (4.0 * pi)) * std::polar(1.0, -kap * r) / r;
    };
    const cplx center = -(1.0 / (4.0 * pi)) * cplx(coulomb_lattice_c0 / h, -kap);
    conv_adj_ = std::make_unique<RadialConvolver>(grid_, kernel, center);
  }
  Field g(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i)
    g[i] = grid_.weight(i) * psi[i];
  Field c = conv_adj_->apply(g);
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] *= vw_[i] / grid_.weight(i);  // multiply by V(y) only
  return c;
}

Field QOperator::apply_grad_scalar(const Field& phi) const {
  if (!conv_grad_) {
    const double kap = kappa_;
    auto kernel = [kap](double r) {
      return cplx(0.0, -1.0 / (4.0 * pi)) * std::polar(1.0, kap * r);
    };
    conv_grad_ = std::make_unique<RadialConvolver>(
        grid_, kernel, cplx(0.0, -1.0 / (4.0 * pi)));
  }
  Field g(phi.size());
  for (std::size_t i = 0; i < phi.size(); ++i) g[i] = vw_[i] * phi[i];
  return conv_grad_->apply(g);
}

Field apply_Q(const Field& phi, double k_modulus, const Field& V,
              const Grid& grid) {
  return QOperator(V, grid, k_modulus).apply(phi);
}

namespace {

Field neumann_sum(const QOperator& q, const Field& rhs, double q_bound,
                  double tol, int max_iter, bool adjoint, int* iterations) {
  if (q_bound >= 1.0)
    throw ContractionError(
        "Neumann series: q_norm_bound >= 1, the contraction certificate "
        "(Lemma on the sup-norm of Q) fails");
  double rhs_sup = 0.0;
  for (const cplx& v : rhs) rhs_sup = std::max(rhs_sup, std::abs(v));
  Field sum = rhs;
  Field term = rhs;
  int n = 0;
  if (q_bound > 0.0 && rhs_sup > 0.0) {
    while (std::pow(q_bound, n + 1) / (1.0 - q_bound) * rhs_sup >= tol) {
      if (n >= max_iter)
        throw ConvergenceError(
            "Neumann series: iteration cap reached before the certified tail "
            "bound fell below tol");
      term = adjoint ? q.apply_adjoint(term) : q.apply(term);
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += term[i];
      ++n;
    }
  }
  if (iterations) *iterations = n;
  return sum;
}

}  // namespace

Field neumann_inverse(const QOperator& q, const Field& rhs, double q_bound,
                      double tol, int max_iter, int* iterations) {
  return neumann_sum(q, rhs, q_bound, tol, max_iter, false, iterations);
}

Field neumann_inverse_adjoint(const QOperator& q, const Field& rhs,
                              double q_bound, double tol, int max_iter,
                              int* iterations) {
  return neumann_sum(q, rhs, q_bound, tol, max_iter, true, iterations);
}

Field free_wave(const Vec3& k, const Grid& grid) {
  const double norm = std::pow(2.0 * pi, -1.5);
  return sample(grid, [&](const double* x) {
    return std::polar(norm, k[0] * x[0] + k[1] * x[1] + k[2] * x[2]);
  });
}

ScatteringState scattering_state(const Vec3& k, const PotentialSpec& V,
                                 const Grid& grid, double tol, int max_iter) {
  ScatteringState st;
  st.k = k;
  st.q_norm_bound = q_norm_bound(V).bound;
  const double kappa = std::sqrt(sqr(k[0]) + sqr(k[1]) + sqr(k[2]));
  st.wavelength_resolved =
      kappa == 0.0 || grid.spacing() <= (2.0 * pi / kappa) / 8.0;
  st.values = free_wave(k, grid);
  if (V.family == PotentialFamily::zero) {
    st.sup_norm = std::pow(2.0 * pi, -1.5);
    return st;
  }
  if (st.q_norm_bound >= 1.0)
    throw ContractionError(
        "scattering_state: q_norm_bound >= 1; the Lippmann-Schwinger Neumann "
        "series has no convergence certificate");
  const Field vf = eval_field(V, grid);
  QOperator q(vf, grid, kappa);
  const Field free = st.values;
  st.values = neumann_inverse(q, free, st.q_norm_bound, tol, max_iter,
                              &st.iterations);
  st.series_tail_bound = std::pow(st.q_norm_bound, st.iterations + 1) /
                         (1.0 - st.q_norm_bound) * std::pow(2.0 * pi, -1.5);
  for (const cplx& v : st.values) st.sup_norm = std::max(st.sup_norm, std::abs(v));
  const Field qphi = q.apply(st.values);
  for (std::size_t i = 0; i < st.values.size(); ++i)
    st.residual_sup = std::max(
        st.residual_sup, std::abs(st.values[i] - free[i] - qphi[i]));
  return st;
}

GradState grad_scattering_state(const Vec3& k, const PotentialSpec& V,
                                const Grid& grid, double tol, int max_iter) {
  GradState g;
  g.k = k;
  const double kappa = std::sqrt(sqr(k[0]) + sqr(k[1]) + sqr(k[2]));
  if (kappa == 0.0)
    throw ConfigError(
        "grad_scattering_state: k = 0 rejected, the gradient kernel contains "
        "k/|k|");
  const Field free = free_wave(k, grid);
  std::array<Field, 3> free_ix;
  for (int j = 0; j < 3; ++j) {
    free_ix[j].resize(free.size());
  }
  {
    std::vector<double> x(3);
    for (std::size_t i = 0; i < free.size(); ++i) {
      grid.node(i, x.data());
      for (int j = 0; j < 3; ++j)
        free_ix[j][i] = cplx(0.0, x[j]) * free[i];
    }
  }
  if (V.family == PotentialFamily::zero) {
    g.values = free_ix;
    return g;
  }
  g.grad_q_bound = potential_lp_norm(V, 1.0) / (4.0 * pi);
  const double qb = q_norm_bound(V).bound;
  if (qb >= 1.0)
    throw ContractionError("grad_scattering_state: q_norm_bound >= 1");
  const Field vf = eval_field(V, grid);
  QOperator q(vf, grid, kappa);
  // term 3 shares (I-Q)^{-1} S (I-Q)^{-1} free across components
  const Field phi = neumann_inverse(q, free, qb, tol, max_iter);
  const Field sphi = q.apply_grad_scalar(phi);
  const Field t3 = neumann_inverse(q, sphi, qb, tol, max_iter);
  for (int j = 0; j < 3; ++j) {
    const Field qx = q.apply(free_ix[j]);
    const Field t2 = neumann_inverse(q, qx, qb, tol, max_iter);
    g.values[j].resize(free.size());
    const double dir = k[j] / kappa;
    for (std::size_t i = 0; i < free.size(); ++i)
      g.values[j][i] = free_ix[j][i] + t2[i] + dir * t3[i];
  }
  return g;
}

}  // namespace nfsolv
