#include "nfsolv/separable.hpp"

#include <algorithm>
#include <cmath>

#include "nfsolv/fft.hpp"

namespace nfsolv {

double required_alpha(int n) {
  if (n <= 0) throw ConfigError("required_alpha: n must be >= 1");
  if (n == 1) return 5.0;
  if (n == 2) return 6.0;
  return double(n) + 2.0;
}

WeightedNormReport weighted_norm_check(const Field& g, double alpha, int n,
                                       const Grid& xgrid, const Grid& ygrid) {
  WeightedNormReport r;
  r.alpha = alpha;
  r.n = n;
  r.required_alpha = required_alpha(n);
  const std::size_t nx = xgrid.size(), ny = ygrid.size();
  if (g.size() != nx * ny)
    throw ConfigError("weighted_norm_check: field/tensor-grid mismatch");
  double plain = 0.0, weighted = 0.0;
  std::vector<double> x(xgrid.dim);
  for (std::size_t ix = 0; ix < nx; ++ix) {
    xgrid.node(ix, x.data());
    double r2 = 0.0;
    for (int d = 0; d < xgrid.dim; ++d) r2 += x[d] * x[d];
    const double wx = xgrid.weight(ix);
    const double xa = std::pow(std::sqrt(r2), alpha);
    const cplx* row = g.data() + ix * ny;
    for (std::size_t iy = 0; iy < ny; ++iy) {
      const double cell = wx * ygrid.weight(iy) * std::norm(row[iy]);
      plain += cell;
      weighted += cell * xa;
    }
  }
  r.plain_norm = std::sqrt(plain);
  r.weighted_norm = std::sqrt(weighted);
  r.passed = alpha > r.required_alpha && std::isfinite(r.weighted_norm) &&
             std::isfinite(r.plain_norm);
  return r;
}

namespace {

double tensor_l2(const Field& f, const Grid& xgrid, const Grid& ygrid) {
  double acc = 0.0;
  const std::size_t ny = ygrid.size();
  for (std::size_t i = 0; i < f.size(); ++i)
    acc += xgrid.weight(i / ny) * ygrid.weight(i % ny) * std::norm(f[i]);
  return std::sqrt(acc);
}

std::vector<double> node_moduli_any(const Grid& g) {
  std::vector<double> r(g.size());
  std::vector<double> k(g.dim);
  for (std::size_t i = 0; i < r.size(); ++i) {
    g.node(i, k.data());
    double s = 0.0;
    for (int d = 0; d < g.dim; ++d) s += k[d] * k[d];
    r[i] = std::sqrt(s);
  }
  return r;
}

}  // namespace

Field solve_positive_channel(const Field& g_plus, const EigenSystem& basis,
                             const SpectrumDecomposition& spec,
                             const Grid& xgrid, const Grid& ygrid) {
  const std::size_t nx = xgrid.size(), ny = ygrid.size();
  if (g_plus.size() != nx * ny)
    throw ConfigError("solve_positive_channel: field/tensor-grid mismatch");
  const double gnorm = tensor_l2(g_plus, xgrid, ygrid);
  const Grid pgrid = dual_grid(xgrid);
  const std::vector<double> mod = node_moduli_any(pgrid);

  Field u(g_plus.size(), cplx(0.0));
  Field v(nx);
  for (std::size_t c = 0; c < basis.values.size(); ++c) {
    const double e = basis.values[c];
    const RealField& phi = basis.vectors[c];
    for (std::size_t ix = 0; ix < nx; ++ix) {
      cplx acc = 0.0;
      const cplx* row = g_plus.data() + ix * ny;
      for (std::size_t iy = 0; iy < ny; ++iy)
        acc += ygrid.weight(iy) * row[iy] * phi[iy];
      v[ix] = acc;
    }
    double vnorm2 = 0.0;
    for (std::size_t ix = 0; ix < nx; ++ix)
      vnorm2 += xgrid.weight(ix) * std::norm(v[ix]);
    if (e <= spec.zero_tol) {
      // range check: P_+ input must not overlap the nonpositive modes
      if (std::sqrt(vnorm2) > 1e-10 * std::max(1.0, gnorm))
        throw Error(
            "solve_positive_channel: input has a component on a nonpositive "
            "mode");
      continue;
    }
    if (vnorm2 == 0.0) continue;
    Field vhat = unitary_forward(v, xgrid, pgrid);
    for (std::size_t i = 0; i < vhat.size(); ++i)
      vhat[i] /= (mod[i] * mod[i] + e);
    const Field ue = unitary_inverse(vhat, pgrid, xgrid);
    for (std::size_t ix = 0; ix < nx; ++ix) {
      cplx* row = u.data() + ix * ny;
      const cplx coef = ue[ix];
      for (std::size_t iy = 0; iy < ny; ++iy) row[iy] += coef * phi[iy];
    }
  }
  const double unorm = tensor_l2(u, xgrid, ygrid);
  if (spec.e_next > 0.0 && unorm > gnorm / spec.e_next + 1e-8)
    throw Error("solve_positive_channel: inverse-norm bound violated");
  return u;
}

std::pair<Field, std::vector<MomentCondition>> solve_zero_channel(
    const Field& v0, int n, const Grid& xgrid, double threshold,
    bool reconstruct) {
  if (n < 1) throw ConfigError("solve_zero_channel: n must be >= 1");
  if (int(xgrid.dim) != n)
    throw ConfigError("solve_zero_channel: grid dimension must equal n");
  std::vector<MomentCondition> conds;
  const double norm_n = std::pow(2.0 * pi, -0.5 * n);

  cplx m0 = 0.0;
  std::vector<cplx> m1(std::size_t(n), 0.0);
  {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < v0.size(); ++i) {
      xgrid.node(i, x.data());
      const cplx wv = xgrid.weight(i) * v0[i];
      m0 += wv;
      for (int d = 0; d < n; ++d) m1[std::size_t(d)] += x[d] * wv;
    }
  }
  if (n <= 4)
    conds.push_back({"(g,phi_N)", std::abs(norm_n * m0), threshold, false});
  if (n == 1)
    conds.push_back({"(g,x*phi_N)", std::abs(norm_n * m1[0]), threshold, false});
  if (n == 2) {
    conds.push_back({"Q1", std::abs(m1[0]) / (2.0 * pi), threshold, false});
    conds.push_back({"Q2", std::abs(m1[1]) / (2.0 * pi), threshold, false});
  }
  bool all = true;
  for (MomentCondition& c : conds) {
    c.pass = c.value <= c.threshold;
    all = all && c.pass;
  }
  if (!all || !reconstruct) return {Field{}, conds};

  const Grid pgrid = dual_grid(xgrid);
  Field vhat = unitary_forward(v0, xgrid, pgrid);
  const std::vector<double> mod = node_moduli_any(pgrid);
  std::size_t origin = 0;
  {
    std::vector<int> mid(std::size_t(n), (pgrid.points_per_axis - 1) / 2);
    origin = pgrid.encode(mid.data());
  }
  Field uhat(vhat.size(), cplx(0.0));
  const double dk = pgrid.spacing();
  for (std::size_t i = 0; i < vhat.size(); ++i) {
    if (i == origin) {
      // pinned origin: averaged one-dimensional limit v''/2 along axes when
      // the gradient conditions hold (n <= 2), the canonical 0 otherwise
      if (n <= 2) {
        const int midv = (pgrid.points_per_axis - 1) / 2;
        cplx acc = 0.0;
        for (int d = 0; d < n; ++d) {
          std::vector<int> ip(std::size_t(n), midv), im(std::size_t(n), midv);
          ip[std::size_t(d)] += 1;
          im[std::size_t(d)] -= 1;
          acc += vhat[pgrid.encode(ip.data())] - 2.0 * vhat[origin] +
                 vhat[pgrid.encode(im.data())];
        }
        uhat[i] = acc / (2.0 * double(n) * dk * dk);
      }
      continue;
    }
    uhat[i] = vhat[i] / (mod[i] * mod[i]);
  }
  return {unitary_inverse(uhat, pgrid, xgrid), conds};
}

double default_delta(const Field& v_j, double e_j, const Grid& xgrid,
                     double threshold) {
  const int n = xgrid.dim;
  double xv1 = 0.0;
  std::vector<double> x(n);
  for (std::size_t i = 0; i < v_j.size(); ++i) {
    xgrid.node(i, x.data());
    double r2 = 0.0;
    for (int d = 0; d < n; ++d) r2 += x[d] * x[d];
    xv1 += xgrid.weight(i) * std::sqrt(r2) * std::abs(v_j[i]);
  }
  const double lip = std::pow(2.0 * pi, -0.5 * n) * xv1;  // |d v-hat / dp|
  const double r = std::sqrt(-e_j);
  double delta = r / 4.0;
  if (lip > 0.0) delta = std::min(delta, 0.1 * threshold / lip);
  return delta;
}

std::pair<Field, NegativeChannelReport> solve_negative_channel(
    const Field& v_j, double e_j, int n, const Grid& xgrid, double delta,
    double threshold, int sphere_resolution, bool reconstruct) {
  if (e_j >= 0.0) throw ConfigError("solve_negative_channel: e_j must be < 0");
  if (int(xgrid.dim) != n)
    throw ConfigError("solve_negative_channel: grid dimension must equal n");
  const double r = std::sqrt(-e_j);
  if (!(delta > 0.0 && delta < r))
    throw ConfigError("solve_negative_channel: need 0 < delta < sqrt(-e_j)");

  NegativeChannelReport rep;
  rep.eigenvalue = e_j;
  rep.threshold = threshold;
  rep.sphere = sphere_sampling(n, r, sphere_resolution);
  rep.values = classical_forward_at(v_j, xgrid, rep.sphere.points.data(),
                                    rep.sphere.count());
  for (const cplx& v : rep.values) rep.max_abs = std::max(rep.max_abs, std::abs(v));
  rep.pass = rep.max_abs <= threshold;
  if (!rep.pass || !reconstruct) return {Field{}, rep};

  const Grid pgrid = dual_grid(xgrid);
  Field vhat = unitary_forward(v_j, xgrid, pgrid);
  const std::vector<double> mod = node_moduli_any(pgrid);
  std::vector<std::size_t> layer;
  for (std::size_t i = 0; i < mod.size(); ++i)
    if (std::abs(mod[i] - r) <= delta && mod[i] > 0.0) layer.push_back(i);
  Field layer_vals;
  if (!layer.empty()) {
    std::vector<double> pts;
    pts.reserve(layer.size() * std::size_t(n));
    std::vector<double> p(n);
    for (std::size_t i : layer) {
      pgrid.node(i, p.data());
      const double s = r / mod[i];
      for (int d = 0; d < n; ++d) pts.push_back(p[d] * s);
    }
    layer_vals = classical_forward_at(v_j, xgrid, pts.data(), layer.size());
  }
  std::vector<char> in_layer(mod.size(), 0);
  for (std::size_t idx = 0; idx < layer.size(); ++idx) in_layer[layer[idx]] = 1;
  Field uhat(vhat.size(), cplx(0.0));
  std::size_t lj = 0;
  for (std::size_t i = 0; i < vhat.size(); ++i) {
    const double den = mod[i] * mod[i] + e_j;
    if (in_layer[i]) {
      const cplx sv = layer_vals[lj++];
      if (std::abs(den) > 1e-12) uhat[i] = (vhat[i] - sv) / den;
    } else if (std::abs(den) > 1e-12) {
      uhat[i] = vhat[i] / den;
    }
  }
  return {unitary_inverse(uhat, pgrid, xgrid), rep};
}

namespace {

// -Laplace_x applied spectrally along the x factor of a tensor field.
Field apply_neg_laplace_x(const Field& u, const Grid& xgrid,
                          const Grid& ygrid) {
  const std::size_t nx = xgrid.size(), ny = ygrid.size();
  const Grid pgrid = dual_grid(xgrid);
  const std::vector<double> mod = node_moduli_any(pgrid);
  Field out(u.size(), cplx(0.0));
  Field col(nx);
  for (std::size_t iy = 0; iy < ny; ++iy) {
    for (std::size_t ix = 0; ix < nx; ++ix) col[ix] = u[ix * ny + iy];
    Field chat = unitary_forward(col, xgrid, pgrid);
    for (std::size_t i = 0; i < chat.size(); ++i)
      chat[i] *= mod[i] * mod[i];
    const Field lc = unitary_inverse(chat, pgrid, xgrid);
    for (std::size_t ix = 0; ix < nx; ++ix) out[ix * ny + iy] = lc[ix];
  }
  return out;
}

void add_tensor(Field& dst, const Field& ux, const RealField& phi,
                std::size_t ny) {
  for (std::size_t ix = 0; ix < ux.size(); ++ix) {
    cplx* row = dst.data() + ix * ny;
    for (std::size_t iy = 0; iy < ny; ++iy) row[iy] += ux[ix] * phi[iy];
  }
}

}  // namespace

SeparableResult solve_full(const Field& g, const SpectrumDecomposition& spec,
                           const EigenSystem& basis, const HOperator& h,
                           int n, const Grid& xgrid, const Grid& ygrid,
                           const SeparableOptions& opts) {
  if (!spec.zero_index)
    throw SpectrumAssumptionError("solve_full: spectrum has no zero mode");
  const std::size_t nx = xgrid.size(), ny = ygrid.size();
  if (g.size() != nx * ny)
    throw ConfigError("solve_full: field/tensor-grid mismatch");

  SeparableResult res;
  const double gnorm = tensor_l2(g, xgrid, ygrid);
  const double threshold =
      opts.threshold > 0.0 ? opts.threshold : 1e-6 * gnorm;
  res.weighted = weighted_norm_check(g, opts.alpha, n, xgrid, ygrid);

  ChannelDecomposition cd = project_channels(g, spec, xgrid, ygrid);

  res.solution.u_zero.assign(g.size(), cplx(0.0));
  res.solution.u_minus.assign(g.size(), cplx(0.0));
  bool all_pass = res.weighted.passed;
  for (const ChannelRHS& ch : cd.channels) {
    const std::size_t vecidx =
        std::size_t(std::find(spec.channel_index.begin(),
                              spec.channel_index.end(),
                              std::make_pair(ch.j, ch.k)) -
                    spec.channel_index.begin());
    const RealField& phi = spec.eigenvectors[vecidx];
    if (ch.j == *spec.zero_index) {
      auto [u0, conds] =
          solve_zero_channel(ch.v, n, xgrid, threshold, opts.reconstruct);
      for (MomentCondition& c : conds) {
        if (ch.k > 1) c.id += "[" + std::to_string(ch.k) + "]";
        all_pass = all_pass && c.pass;
        res.moments.zero_channel.push_back(c);
      }
      if (!u0.empty()) add_tensor(res.solution.u_zero, u0, phi, ny);
    } else {
      double delta = opts.delta;
      if (delta <= 0.0) delta = default_delta(ch.v, ch.eigenvalue, xgrid, threshold);
      auto [uj, rep] = solve_negative_channel(ch.v, ch.eigenvalue, n, xgrid,
                                              delta, threshold,
                                              opts.sphere_resolution,
                                              opts.reconstruct);
      rep.j = ch.j;
      rep.k = ch.k;
      all_pass = all_pass && rep.pass;
      res.moments.negative_channels.push_back(std::move(rep));
      if (!uj.empty()) add_tensor(res.solution.u_minus, uj, phi, ny);
    }
  }
  res.moments.overall = all_pass;

  if (opts.reconstruct && all_pass) {
    res.solution.u_plus =
        solve_positive_channel(cd.remainder, basis, spec, xgrid, ygrid);
  } else {
    res.solution.u_plus.assign(g.size(), cplx(0.0));
  }
  res.solution.u_plus_norm = tensor_l2(res.solution.u_plus, xgrid, ygrid);
  res.solution.u_zero_norm = tensor_l2(res.solution.u_zero, xgrid, ygrid);
  res.solution.u_minus_norm = tensor_l2(res.solution.u_minus, xgrid, ygrid);

  if (opts.reconstruct && all_pass) {
    Field u(g.size());
    for (std::size_t i = 0; i < u.size(); ++i)
      u[i] = res.solution.u_plus[i] + res.solution.u_zero[i] +
             res.solution.u_minus[i];
    Field lu = apply_neg_laplace_x(u, xgrid, ygrid);
    const Field hy = apply_h_tensor(u, h, xgrid);
    // residual over interior y rows (the Dirichlet walls are outside the
    // discrete operator's domain)
    double num = 0.0, den = 0.0;
    const int nyp = ygrid.points_per_axis;
    std::vector<int> yi(ygrid.dim);
    for (std::size_t i = 0; i < u.size(); ++i) {
      const std::size_t iy = i % ny;
      ygrid.decode(iy, yi.data());
      bool interior = true;
      for (int d = 0; d < ygrid.dim; ++d)
        if (yi[d] == 0 || yi[d] == nyp - 1) interior = false;
      if (!interior) continue;
      const double w = xgrid.weight(i / ny) * ygrid.weight(iy);
      num += w * std::norm(lu[i] + hy[i] - g[i]);
      den += w * std::norm(g[i]);
    }
    res.solution.residual_l2 = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
  }
  return res;
}

}  // namespace nfsolv
