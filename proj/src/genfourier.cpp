#include "nfsolv/genfourier.hpp"

#include <algorithm>
#include <cmath>

namespace nfsolv {

namespace {

constexpr int neumann_cap = 400;

struct KappaStencil {
  int i0 = 0;           // first of four table indices
  double w[4] = {0, 0, 0, 0};
};

struct KappaTable {
  std::vector<double> kappas;
  double spacing = 0.0;

  KappaStencil stencil(double kappa) const {
    KappaStencil s;
    const int t = int(kappas.size());
    if (t < 4) throw Error("kappa table too small");
    int i = int(std::floor(kappa / spacing)) - 1;
    i = std::clamp(i, 0, t - 4);
    s.i0 = i;
    for (int a = 0; a < 4; ++a) {
      double w = 1.0;
      for (int b = 0; b < 4; ++b) {
        if (b == a) continue;
        w *= (kappa - kappas[i + b]) / (kappas[i + a] - kappas[i + b]);
      }
      s.w[a] = w;
    }
    return s;
  }
};

KappaTable build_kappa_table(const Grid& kgrid) {
  KappaTable t;
  const double kmax = kgrid.extent * std::sqrt(double(kgrid.dim)) * 1.0000001;
  int n = std::max(8, int(std::ceil(kmax / kappa_table_spacing)) + 1);
  t.spacing = kmax / (n - 1);
  t.kappas.resize(n);
  for (int i = 0; i < n; ++i) t.kappas[i] = t.spacing * i;
  return t;
}

std::vector<double> node_moduli(const Grid& kgrid) {
  std::vector<double> r(kgrid.size());
  std::vector<double> k(kgrid.dim);
  for (std::size_t i = 0; i < r.size(); ++i) {
    kgrid.node(i, k.data());
    double s = 0.0;
    for (int d = 0; d < kgrid.dim; ++d) s += k[d] * k[d];
    r[i] = std::sqrt(s);
  }
  return r;
}

// sup_r and L^{4/3} of |V(x)| |x| for the radial decaying families.
double rV_sup(const PotentialSpec& V) {
  double m = 0.0;
  double x[3] = {0, 0, 0};
  for (int i = 0; i <= 60000; ++i) {
    x[0] = 60.0 * i / 60000.0;
    m = std::max(m, std::abs(V.eval(x, 3)) * x[0]);
  }
  return m;
}

double rV_l43(const PotentialSpec& V) {
  const double p = 4.0 / 3.0;
  double acc = 0.0;
  const int n = 60000;
  const double h = 60.0 / n;
  double x[3] = {0, 0, 0};
  for (int i = 0; i <= n; ++i) {
    x[0] = i * h;
    const double s =
        std::pow(std::abs(V.eval(x, 3)) * x[0], p) * 4.0 * pi * x[0] * x[0];
    acc += (i == 0 || i == n) ? 0.5 * s : s;
  }
  return std::pow(acc * h, 1.0 / p);
}

}  // namespace

GenTransform forward(const Field& f, const PotentialSpec& V, const Grid& kgrid,
                     const Grid& xgrid, double tol) {
  GenTransform t;
  t.kgrid = kgrid;
  t.values = classical_forward(f, xgrid, kgrid);
  if (V.family == PotentialFamily::zero) return t;

  const double qb = q_norm_bound(V).bound;
  if (qb >= 1.0) throw ContractionError("forward: q_norm_bound >= 1");
  const Field vf = eval_field(V, xgrid);
  const KappaTable table = build_kappa_table(kgrid);
  const std::vector<double> mod = node_moduli(kgrid);
  std::vector<KappaStencil> st(mod.size());
  for (std::size_t i = 0; i < mod.size(); ++i) st[i] = table.stencil(mod[i]);

  for (int ti = 0; ti < int(table.kappas.size()); ++ti) {
    QOperator q(vf, xgrid, table.kappas[ti]);
    Field psi = neumann_inverse_adjoint(q, f, qb, tol, neumann_cap);
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] -= f[i];
    const Field corr = classical_forward(psi, xgrid, kgrid);
    for (std::size_t i = 0; i < t.values.size(); ++i) {
      const int a = ti - st[i].i0;
      if (a >= 0 && a < 4) t.values[i] += st[i].w[a] * corr[i];
    }
  }
  return t;
}

Field restrict_to_sphere(const Field& f, const PotentialSpec& V,
                         const SphereSampling& sphere, const Grid& xgrid,
                         double tol) {
  if (sphere.dim != 3)
    throw ConfigError("restrict_to_sphere: sphere must be 3-dimensional");
  Field psi = f;
  if (V.family != PotentialFamily::zero) {
    const double qb = q_norm_bound(V).bound;
    if (qb >= 1.0) throw ContractionError("restrict_to_sphere: q_norm_bound >= 1");
    const Field vf = eval_field(V, xgrid);
    QOperator q(vf, xgrid, sphere.radius);
    psi = neumann_inverse_adjoint(q, f, qb, tol, neumann_cap);
  }
  return classical_forward_at(psi, xgrid, sphere.points.data(), sphere.count());
}

Field inverse(const GenTransform& t, const PotentialSpec& V, const Grid& xgrid,
              double tol) {
  Field u = classical_inverse(t.values, t.kgrid, xgrid);
  if (V.family == PotentialFamily::zero) return u;

  const double qb = q_norm_bound(V).bound;
  if (qb >= 1.0) throw ContractionError("inverse: q_norm_bound >= 1");
  const Field vf = eval_field(V, xgrid);
  const KappaTable table = build_kappa_table(t.kgrid);
  const std::vector<double> mod = node_moduli(t.kgrid);
  std::vector<KappaStencil> st(mod.size());
  for (std::size_t i = 0; i < mod.size(); ++i) st[i] = table.stencil(mod[i]);

  for (int ti = 0; ti < int(table.kappas.size()); ++ti) {
    Field slice(t.values.size(), cplx(0.0));
    bool any = false;
    for (std::size_t i = 0; i < slice.size(); ++i) {
      const int a = ti - st[i].i0;
      if (a >= 0 && a < 4 && t.values[i] != cplx(0.0)) {
        slice[i] = st[i].w[a] * t.values[i];
        any = true;
      }
    }
    if (!any) continue;
    const Field r = classical_inverse(slice, t.kgrid, xgrid);
    QOperator q(vf, xgrid, table.kappas[ti]);
    Field corr = neumann_inverse(q, r, qb, tol, neumann_cap);
    for (std::size_t i = 0; i < u.size(); ++i) u[i] += corr[i] - r[i];
  }
  return u;
}

GradBoundReport grad_sup_bound(const Field& f, const PotentialSpec& V,
                               const Grid& xgrid) {
  GradBoundReport r;
  double f1 = 0.0, xf1 = 0.0;
  {
    std::vector<double> x(xgrid.dim);
    for (std::size_t i = 0; i < f.size(); ++i) {
      xgrid.node(i, x.data());
      double r2 = 0.0;
      for (int d = 0; d < xgrid.dim; ++d) r2 += x[d] * x[d];
      const double wv = xgrid.weight(i) * std::abs(f[i]);
      f1 += wv;
      xf1 += wv * std::sqrt(r2);
    }
  }
  const double c32 = std::pow(2.0 * pi, -1.5);
  r.t1_bound = c32 * xf1;
  if (V.family != PotentialFamily::zero) {
    const double qb = q_norm_bound(V).bound;
    if (qb >= 1.0) throw ContractionError("grad_sup_bound: q_norm_bound >= 1");
    const double qe = (1.0 / (4.0 * pi)) *
                      (rV_sup(V) * 2.0 * pi +
                       std::pow(4.0 * pi, 0.25) * rV_l43(V));
    r.t2_bound = c32 * f1 / (1.0 - qb) * qe;
    r.t3_bound = f1 / (4.0 * pi) * c32 / sqr(1.0 - qb) *
                 potential_lp_norm(V, 1.0);
  }
  r.total = r.t1_bound + r.t2_bound + r.t3_bound;
  return r;
}

}  // namespace nfsolv
