#include "nfsolv/helmholtz.hpp"

#include <algorithm>
#include <cmath>

namespace nfsolv {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::solvable: return "solvable";
    case Verdict::not_solvable: return "not_solvable";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "unknown";
}

SolvabilityReport check_solvability(const Field& f, double a,
                                    const PotentialSpec& V, const Grid& xgrid,
                                    int sphere_resolution, double threshold,
                                    double tol) {
  if (a < 0.0) throw ConfigError("check_solvability: a must be >= 0");
  SolvabilityReport r;
  r.a = a;
  r.threshold =
      threshold > 0.0 ? threshold : 1e-6 * lp_norm(f, 2.0, xgrid);
  r.sphere = sphere_sampling(3, std::sqrt(a), sphere_resolution);
  r.sphere_values = restrict_to_sphere(f, V, r.sphere, xgrid, tol);
  for (const cplx& v : r.sphere_values)
    r.max_abs = std::max(r.max_abs, std::abs(v));
  if (r.max_abs <= r.threshold)
    r.verdict = Verdict::solvable;
  else if (r.max_abs <= 10.0 * r.threshold)
    r.verdict = Verdict::indeterminate;
  else
    r.verdict = Verdict::not_solvable;
  r.grad_bound = grad_sup_bound(f, V, xgrid).total;
  return r;
}

double default_sigma(double a, double grad_bound, double ft_l2,
                     const Grid& kgrid) {
  const double dk = kgrid.spacing();
  double sigma = 4.0 * dk;
  if (a > 0.0 && grad_bound > 0.0) {
    // grad_bound * sigma <= 0.1 ||f-tilde|| / sqrt(8 pi a sigma)
    const double rhs = 0.1 * ft_l2 / (grad_bound * std::sqrt(8.0 * pi * a));
    sigma = std::pow(rhs, 2.0 / 3.0);
  }
  sigma = std::max(sigma, 2.0 * dk);
  if (a > 0.0) sigma = std::min(sigma, 0.9 * std::sqrt(a));
  return sigma;
}

SolutionField solve(const Field& f, double a, const PotentialSpec& V,
                    const Grid& xgrid, const Grid& kgrid, double sigma,
                    double tol) {
  const double sqrt_a = std::sqrt(a);
  if (a > 0.0 && !(sigma > 0.0 && sigma < sqrt_a))
    throw ConfigError("solve: need 0 < sigma < sqrt(a)");

  GenTransform ft = forward(f, V, kgrid, xgrid, tol);
  const std::size_t m = ft.values.size();
  std::vector<double> mod(m);
  {
    std::vector<double> k(3);
    for (std::size_t i = 0; i < m; ++i) {
      kgrid.node(i, k.data());
      mod[i] = std::sqrt(sqr(k[0]) + sqr(k[1]) + sqr(k[2]));
    }
  }

  Field ut(m, cplx(0.0));
  double n_outer = 0.0, n_u1 = 0.0, n_u2 = 0.0;

  if (a > 0.0) {
    // sphere values along each in-layer node's direction, one dedicated
    // adjoint solve at |k| = sqrt(a)
    std::vector<std::size_t> layer;
    for (std::size_t i = 0; i < m; ++i)
      if (std::abs(mod[i] - sqrt_a) <= sigma && mod[i] > 0.0) layer.push_back(i);
    Field psi = f;
    if (V.family != PotentialFamily::zero) {
      const double qb = q_norm_bound(V).bound;
      if (qb >= 1.0) throw ContractionError("solve: q_norm_bound >= 1");
      const Field vf = eval_field(V, xgrid);
      QOperator q(vf, xgrid, sqrt_a);
      psi = neumann_inverse_adjoint(q, f, qb, tol, 400);
    }
    std::vector<double> pts;
    pts.reserve(3 * layer.size());
    {
      std::vector<double> k(3);
      for (std::size_t i : layer) {
        kgrid.node(i, k.data());
        const double s = sqrt_a / mod[i];
        pts.push_back(k[0] * s);
        pts.push_back(k[1] * s);
        pts.push_back(k[2] * s);
      }
    }
    const Field sphere_vals =
        classical_forward_at(psi, xgrid, pts.data(), layer.size());

    std::vector<char> in_layer(m, 0);
    for (std::size_t j = 0; j < layer.size(); ++j) in_layer[layer[j]] = 1;
    std::size_t lj = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const double den = mod[i] * mod[i] - a;
      const double w = kgrid.weight(i);
      if (in_layer[i]) {
        const cplx sv = sphere_vals[lj++];
        cplx u1 = 0.0;
        if (std::abs(den) > 1e-12) u1 = (ft.values[i] - sv) / den;
        ut[i] = u1;
        n_u1 += w * std::norm(u1);
        if (std::abs(den) > 1e-12) n_u2 += w * std::norm(sv / den);
      } else if (std::abs(den) > 1e-12) {
        ut[i] = ft.values[i] / den;
        n_outer += w * std::norm(ut[i]);
      }
    }
  } else {
    // a = 0: subtract f-tilde(0) inside the unit ball, pin the origin node to
    // the averaged one-dimensional limit f''/2 along the axes
    std::size_t origin = 0;
    {
      const int mid = (kgrid.points_per_axis - 1) / 2;
      int idx[3] = {mid, mid, mid};
      origin = kgrid.encode(idx);
    }
    const cplx f0 = ft.values[origin];
    const double dk = kgrid.spacing();
    for (std::size_t i = 0; i < m; ++i) {
      const double den = mod[i] * mod[i];
      const double w = kgrid.weight(i);
      if (i == origin) {
        const int mid = (kgrid.points_per_axis - 1) / 2;
        cplx acc = 0.0;
        for (int d = 0; d < 3; ++d) {
          int ip[3] = {mid, mid, mid}, im[3] = {mid, mid, mid};
          ip[d] += 1;
          im[d] -= 1;
          acc += ft.values[kgrid.encode(ip)] - 2.0 * f0 +
                 ft.values[kgrid.encode(im)];
        }
        ut[i] = acc / (6.0 * dk * dk);
        n_u1 += w * std::norm(ut[i]);
      } else if (mod[i] <= 1.0) {
        ut[i] = (ft.values[i] - f0) / den;
        n_u1 += w * std::norm(ut[i]);
        n_u2 += w * std::norm(f0 / den);
      } else {
        ut[i] = ft.values[i] / den;
        n_outer += w * std::norm(ut[i]);
      }
    }
  }

  GenTransform utr;
  utr.kgrid = kgrid;
  utr.values = std::move(ut);
  SolutionField sol;
  sol.values = inverse(utr, V, xgrid, tol);
  sol.sigma = sigma;
  sol.split_norm_outer = std::sqrt(n_outer);
  sol.split_norm_u1 = std::sqrt(n_u1);
  sol.split_norm_u2_dropped = std::sqrt(n_u2);

  const Field vf = eval_field(V, xgrid);
  const Field hu = apply_H(sol.values, vf, a, xgrid);
  const int n = xgrid.points_per_axis;
  double num = 0.0, den = 0.0;
  std::vector<int> xi(3);
  for (std::size_t i = 0; i < f.size(); ++i) {
    xgrid.decode(i, xi.data());
    bool interior = true;
    for (int d = 0; d < 3; ++d)
      if (xi[d] == 0 || xi[d] == n - 1) interior = false;
    if (!interior) continue;
    const double w = xgrid.weight(i);
    num += w * std::norm(hu[i] - f[i]);
    den += w * std::norm(f[i]);
  }
  sol.residual_l2 = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
  return sol;
}

Field apply_H(const Field& u, const Field& Vfield, double a,
              const Grid& xgrid) {
  if (xgrid.dim != 3) throw ConfigError("apply_H: grid must be 3-dimensional");
  const int n = xgrid.points_per_axis;
  const double h2 = sqr(xgrid.spacing());
  Field out(u.size(), cplx(0.0));
  const std::size_t s2 = std::size_t(n) * n;
  for (int i = 1; i < n - 1; ++i)
    for (int j = 1; j < n - 1; ++j)
      for (int l = 1; l < n - 1; ++l) {
        const std::size_t c = std::size_t(i) * s2 + std::size_t(j) * n + l;
        const cplx lap = (6.0 * u[c] - u[c - 1] - u[c + 1] - u[c - n] -
                          u[c + n] - u[c - s2] - u[c + s2]) / h2;
        out[c] = lap + (Vfield[c] - a) * u[c];
      }
  return out;
}

std::vector<double> divergence_witness(const Field& f, double a,
                                       const PotentialSpec& V,
                                       const Grid& xgrid,
                                       const std::vector<double>& sigmas,
                                       const WitnessOptions& opts, double tol) {
  const double sqrt_a = std::sqrt(a);
  const double scale = a > 0.0 ? sqrt_a : 1.0;
  const double sigma0 = opts.sigma0_factor * scale;
  std::vector<double> out;
  out.reserve(sigmas.size());
  for (double sigma : sigmas) {
    if (!(sigma > 0.0 && sigma < sigma0))
      throw ConfigError("divergence_witness: need 0 < sigma < sigma0");
    // substitute t = 1/s to tame the 1/s^2 growth toward the sphere
    const int mrad = opts.radial_nodes;
    const double t0 = 1.0 / sigma0, t1 = 1.0 / sigma;
    const double ht = (t1 - t0) / mrad;
    double acc = 0.0;
    for (int i = 0; i <= mrad; ++i) {
      const double t = t0 + ht * i;
      const double s = 1.0 / t;
      const double wq = ((i == 0 || i == mrad) ? 0.5 : 1.0) * ht / (t * t);
      double shell = 0.0;
      const int sides = a > 0.0 ? 2 : 1;
      for (int side = 0; side < sides; ++side) {
        const double r = a > 0.0 ? (side == 0 ? sqrt_a - s : sqrt_a + s) : s;
        if (r <= 0.0) continue;
        const SphereSampling sp =
            sphere_sampling(3, r, opts.sphere_resolution);
        const Field vals = restrict_to_sphere(f, V, sp, xgrid, tol);
        const double den = sqr(r * r - a);
        double surf = 0.0;
        for (std::size_t p = 0; p < sp.count(); ++p)
          surf += sp.weights[p] * std::norm(vals[p]);
        shell += surf / den;
      }
      acc += wq * shell;
    }
    out.push_back(std::sqrt(acc));
  }
  return out;
}

}  // namespace nfsolv
