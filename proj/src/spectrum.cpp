#include "nfsolv/spectrum.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>

namespace nfsolv {

namespace {

// interior node list for Dirichlet walls (all axis indices in 1..n-2)
std::vector<std::size_t> interior_nodes(const Grid& g) {
  std::vector<std::size_t> out;
  const int n = g.points_per_axis;
  std::vector<int> xi(g.dim);
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.decode(i, xi.data());
    bool in = true;
    for (int d = 0; d < g.dim; ++d)
      if (xi[d] == 0 || xi[d] == n - 1) in = false;
    if (in) out.push_back(i);
  }
  return out;
}

}  // namespace

HOperator discretize_h(const PotentialSpec& V, const Grid& ygrid) {
  if (ygrid.dim != 1 && ygrid.dim != 2)
    throw ConfigError("discretize_h: only y-dimension 1 or 2 supported");
  HOperator h;
  h.ygrid = ygrid;
  const std::vector<std::size_t> in = interior_nodes(ygrid);
  h.vdiag.resize(in.size());
  std::vector<double> x(ygrid.dim);
  for (std::size_t a = 0; a < in.size(); ++a) {
    ygrid.node(in[a], x.data());
    h.vdiag[a] = V.eval(x.data(), ygrid.dim);
  }
  return h;
}

namespace {

// Solves the interior eigenproblem; returns ascending eigenpairs with
// l2-normalized interior vectors.
void interior_eigensolve(const HOperator& h, std::vector<double>& vals,
                         std::vector<std::vector<double>>& vecs,
                         double upper_bound, bool bounded) {
  const Grid& g = h.ygrid;
  const int n = g.points_per_axis;
  const double ih2 = 1.0 / sqr(g.spacing());
  if (g.dim == 1) {
    const lapack_int m = n - 2;
    std::vector<double> d(m), e(m > 0 ? m - 1 : 0);
    for (lapack_int i = 0; i < m; ++i) d[i] = 2.0 * ih2 + h.vdiag[i];
    for (lapack_int i = 0; i + 1 < m; ++i) e[i] = -ih2;
    std::vector<double> w(m), z(std::size_t(m) * m);
    std::vector<lapack_int> isuppz(2 * std::size_t(std::max<lapack_int>(1, m)));
    lapack_int found = 0;
    lapack_int info = LAPACKE_dstevr(
        LAPACK_ROW_MAJOR, 'V', bounded ? 'V' : 'A', m, d.data(), e.data(),
        -1e300, bounded ? upper_bound : 1e300, 1, m, 0.0, &found, w.data(),
        z.data(), m, isuppz.data());
    if (info != 0) throw Error("LAPACKE_dstevr failed");
    vals.assign(w.begin(), w.begin() + found);
    vecs.resize(found);
    for (lapack_int c = 0; c < found; ++c) {
      vecs[c].resize(m);
      for (lapack_int r = 0; r < m; ++r) vecs[c][r] = z[std::size_t(r) * m + c];
    }
    return;
  }
  // dim 2: dense symmetric operator on the interior tensor nodes
  const lapack_int mi = n - 2;
  const lapack_int m = mi * mi;
  std::vector<double> A(std::size_t(m) * m, 0.0);
  auto at = [&](lapack_int r, lapack_int c) -> double& {
    return A[std::size_t(r) * m + c];
  };
  for (lapack_int i = 0; i < mi; ++i)
    for (lapack_int j = 0; j < mi; ++j) {
      const lapack_int r = i * mi + j;
      at(r, r) = 4.0 * ih2 + h.vdiag[std::size_t(r)];
      if (i > 0) at(r, r - mi) = -ih2;
      if (i < mi - 1) at(r, r + mi) = -ih2;
      if (j > 0) at(r, r - 1) = -ih2;
      if (j < mi - 1) at(r, r + 1) = -ih2;
    }
  std::vector<double> w(m), z(std::size_t(m) * m);
  std::vector<lapack_int> isuppz(2 * std::size_t(m));
  lapack_int found = 0;
  lapack_int info = LAPACKE_dsyevr(
      LAPACK_ROW_MAJOR, 'V', bounded ? 'V' : 'A', 'U', m, A.data(), m, -1e300,
      bounded ? upper_bound : 1e300, 1, m, 0.0, &found, w.data(), z.data(), m,
      isuppz.data());
  if (info != 0) throw Error("LAPACKE_dsyevr failed");
  vals.assign(w.begin(), w.begin() + found);
  vecs.resize(found);
  for (lapack_int c = 0; c < found; ++c) {
    vecs[c].resize(m);
    for (lapack_int r = 0; r < m; ++r) vecs[c][r] = z[std::size_t(r) * m + c];
  }
}

// Interior l2 vector -> full-grid field, quadrature-orthonormal.
RealField to_full_grid(const std::vector<double>& v, const Grid& g) {
  const std::vector<std::size_t> in = interior_nodes(g);
  RealField out(g.size(), 0.0);
  const double scale = std::pow(g.spacing(), -0.5 * g.dim);
  for (std::size_t a = 0; a < in.size(); ++a) out[in[a]] = v[a] * scale;
  return out;
}

}  // namespace

EigenSystem eigensolve(const HOperator& h) {
  std::vector<double> vals;
  std::vector<std::vector<double>> vecs;
  interior_eigensolve(h, vals, vecs, 0.0, false);
  EigenSystem es;
  es.values = vals;
  es.vectors.reserve(vecs.size());
  for (const auto& v : vecs) es.vectors.push_back(to_full_grid(v, h.ygrid));
  return es;
}

SpectrumDecomposition spectrum_below_vplus_unchecked(const HOperator& h,
                                                     double v_plus,
                                                     double zero_tol,
                                                     double cluster_tol) {
  if (cluster_tol < 0.0) cluster_tol = default_cluster_tol(v_plus);
  std::vector<double> vals;
  std::vector<std::vector<double>> vecs;
  interior_eigensolve(h, vals, vecs, v_plus - 1e-9 * std::max(1.0, std::abs(v_plus)),
                      true);
  SpectrumDecomposition sd;
  sd.v_plus = v_plus;
  sd.zero_tol = zero_tol;
  sd.cluster_tol = cluster_tol;
  int cluster = 0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i == 0 || vals[i] - sd.eigenvalues.back() > cluster_tol) {
      sd.eigenvalues.push_back(vals[i]);
      sd.multiplicities.push_back(1);
      ++cluster;
    } else {
      ++sd.multiplicities.back();
    }
    sd.eigenvectors.push_back(to_full_grid(vecs[i], h.ygrid));
    sd.channel_index.emplace_back(cluster, sd.multiplicities.back());
  }
  for (std::size_t j = 0; j < sd.eigenvalues.size(); ++j) {
    if (std::abs(sd.eigenvalues[j]) <= zero_tol) {
      if (sd.zero_index)
        throw Error(
            "spectrum_below_vplus: two distinct eigenvalues within zero_tol "
            "of 0");
      sd.zero_index = int(j) + 1;
    }
  }
  sd.e_next = v_plus;
  {
    // smallest level above zero_tol, walls included (full solve)
    std::vector<double> av;
    std::vector<std::vector<double>> dummy;
    interior_eigensolve(h, av, dummy, 0.0, false);
    for (double e : av)
      if (e > zero_tol) {
        sd.e_next = std::min(sd.e_next, e);
        break;
      }
  }
  return sd;
}

SpectrumDecomposition spectrum_below_vplus(const HOperator& h, double v_plus,
                                           double zero_tol,
                                           double cluster_tol) {
  SpectrumDecomposition sd =
      spectrum_below_vplus_unchecked(h, v_plus, zero_tol, cluster_tol);
  if (!sd.zero_index)
    throw SpectrumAssumptionError(
        "spectrum_below_vplus: no zero mode below the asymptote (Assumption "
        "on the transverse spectrum fails)");
  for (std::size_t j = 0; j < sd.eigenvalues.size(); ++j) {
    const double e = sd.eigenvalues[j];
    if (e > sd.zero_tol)
      throw SpectrumAssumptionError(
          "spectrum_below_vplus: positive eigenvalue below the asymptote");
    if (int(j) + 1 < *sd.zero_index && e >= -sd.zero_tol)
      throw SpectrumAssumptionError(
          "spectrum_below_vplus: nonnegative eigenvalue before the zero mode");
  }
  return sd;
}

namespace {

double eigenvalue_at(const PotentialSpec& spec, const Grid& ygrid,
                     int target_index) {
  HOperator h = discretize_h(spec, ygrid);
  std::vector<double> vals;
  std::vector<std::vector<double>> vecs;
  interior_eigensolve(h, vals, vecs, 0.0, false);
  if (target_index < 1 || std::size_t(target_index) > vals.size())
    throw ConfigError("tune_zero_mode: target_index out of range");
  return vals[std::size_t(target_index) - 1];
}

PotentialSpec with_param(PotentialSpec spec, TuneParameter p, double v) {
  if (p == TuneParameter::v_plus)
    spec.v_plus = v;
  else
    spec.beta = v;
  return spec;
}

}  // namespace

TuneResult tune_zero_mode(const PotentialSpec& family, const Grid& ygrid,
                          int target_index, double zero_tol,
                          TuneParameter param, double lo, double hi) {
  TuneResult res;
  res.spec = family;
  res.value = param == TuneParameter::v_plus ? family.v_plus : family.beta;
  res.achieved_e = eigenvalue_at(family, ygrid, target_index);
  if (std::abs(res.achieved_e) <= zero_tol) return res;

  double elo = eigenvalue_at(with_param(family, param, lo), ygrid, target_index);
  double ehi = eigenvalue_at(with_param(family, param, hi), ygrid, target_index);
  if ((elo < 0.0) == (ehi < 0.0))
    throw ConfigError("tune_zero_mode: bracket does not straddle zero");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double em = eigenvalue_at(with_param(family, param, mid), ygrid,
                                    target_index);
    ++res.iterations;
    if ((em < 0.0) == (elo < 0.0)) {
      lo = mid;
      elo = em;
    } else {
      hi = mid;
    }
    res.value = mid;
    res.achieved_e = em;
    if (std::abs(em) <= zero_tol || hi - lo < 1e-15 * std::max(1.0, std::abs(mid)))
      break;
  }
  if (std::abs(res.achieved_e) > zero_tol)
    throw ConvergenceError("tune_zero_mode: bisection did not reach zero_tol");
  res.spec = with_param(family, param, res.value);
  return res;
}

ChannelDecomposition project_channels(const Field& g,
                                      const SpectrumDecomposition& spec,
                                      const Grid& xgrid, const Grid& ygrid) {
  const std::size_t nx = xgrid.size(), ny = ygrid.size();
  if (g.size() != nx * ny)
    throw ConfigError("project_channels: field/tensor-grid mismatch");
  ChannelDecomposition cd;
  cd.remainder = g;
  for (std::size_t c = 0; c < spec.eigenvectors.size(); ++c) {
    ChannelRHS ch;
    ch.j = spec.channel_index[c].first;
    ch.k = spec.channel_index[c].second;
    ch.eigenvalue = spec.eigenvalues[std::size_t(ch.j) - 1];
    ch.v.resize(nx);
    const RealField& phi = spec.eigenvectors[c];
    for (std::size_t ix = 0; ix < nx; ++ix) {
      cplx acc = 0.0;
      const cplx* row = g.data() + ix * ny;
      for (std::size_t iy = 0; iy < ny; ++iy)
        acc += ygrid.weight(iy) * row[iy] * phi[iy];
      ch.v[ix] = acc;
    }
    for (std::size_t ix = 0; ix < nx; ++ix) {
      cplx* row = cd.remainder.data() + ix * ny;
      for (std::size_t iy = 0; iy < ny; ++iy) row[iy] -= ch.v[ix] * phi[iy];
    }
    cd.channels.push_back(std::move(ch));
  }
  // pointwise Schwarz bound |v_j(x)| <= sqrt(int |g(x,y)|^2 dy)
  for (std::size_t ix = 0; ix < nx; ++ix) {
    double gy2 = 0.0;
    const cplx* row = g.data() + ix * ny;
    for (std::size_t iy = 0; iy < ny; ++iy)
      gy2 += ygrid.weight(iy) * std::norm(row[iy]);
    const double bound = std::sqrt(gy2);
    for (const ChannelRHS& ch : cd.channels)
      cd.schwarz_max_excess =
          std::max(cd.schwarz_max_excess, std::abs(ch.v[ix]) - bound);
  }
  return cd;
}

Field apply_h_tensor(const Field& g, const HOperator& h, const Grid& xgrid) {
  const Grid& yg = h.ygrid;
  const std::size_t nx = xgrid.size(), ny = yg.size();
  if (g.size() != nx * ny)
    throw ConfigError("apply_h_tensor: field/tensor-grid mismatch");
  const int n = yg.points_per_axis;
  const double ih2 = 1.0 / sqr(yg.spacing());
  Field out(g.size(), cplx(0.0));
  if (yg.dim == 1) {
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const cplx* row = g.data() + ix * ny;
      cplx* orow = out.data() + ix * ny;
      for (int iy = 1; iy < n - 1; ++iy)
        orow[iy] = ih2 * (2.0 * row[iy] - row[iy - 1] - row[iy + 1]) +
                   h.vdiag[std::size_t(iy) - 1] * row[iy];
    }
    return out;
  }
  const std::size_t stride = std::size_t(n);
  for (std::size_t ix = 0; ix < nx; ++ix) {
    const cplx* row = g.data() + ix * ny;
    cplx* orow = out.data() + ix * ny;
    for (int a = 1; a < n - 1; ++a)
      for (int b = 1; b < n - 1; ++b) {
        const std::size_t c = std::size_t(a) * stride + b;
        const std::size_t vi = std::size_t(a - 1) * (n - 2) + (b - 1);
        orow[c] = ih2 * (4.0 * row[c] - row[c - 1] - row[c + 1] -
                         row[c - stride] - row[c + stride]) +
                  h.vdiag[vi] * row[c];
      }
  }
  return out;
}

}  // namespace nfsolv
