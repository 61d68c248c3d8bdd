#include "nfsolv/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>

namespace nfsolv {

Field fft_nd(const Field& in, const std::vector<int>& shape, int sign) {
  std::size_t total = 1;
  for (int s : shape) total *= std::size_t(s);
  if (in.size() != total) throw ConfigError("fft_nd: size does not match shape");
  Field out(total);
  // std::complex<double> is layout-compatible with fftw_complex.
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data()));
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  fftw_plan plan =
      fftw_plan_dft(int(shape.size()), shape.data(), src, dst,
                    sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
                    FFTW_ESTIMATE | FFTW_PRESERVE_INPUT);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  return out;
}

namespace {

// k-axis index -> DFT frequency index j (so that k = j * dk), per axis.
std::vector<int> freq_indices(const Grid& kgrid) {
  const int m = kgrid.points_per_axis;
  std::vector<int> j(m);
  for (int i = 0; i < m; ++i) j[i] = i - (m - 1) / 2;
  return j;
}

Field forward_impl(const Field& f, const Grid& xgrid, const Grid& kgrid,
                   bool uniform) {
  const int d = xgrid.dim;
  const int n = xgrid.points_per_axis;
  if (f.size() != xgrid.size())
    throw ConfigError("classical_forward: field/grid mismatch");

  const double hvol = std::pow(xgrid.spacing(), d);
  Field g(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    g[i] = (uniform ? hvol : xgrid.weight(i)) * f[i];
  const Field G = fft_nd(g, std::vector<int>(d, n), -1);

  const std::vector<int> jidx = freq_indices(kgrid);
  const double norm = std::pow(2.0 * pi, -0.5 * d);
  const double E = xgrid.extent;
  Field out(kgrid.size());
  std::vector<int> ki(d);
  for (std::size_t i = 0; i < out.size(); ++i) {
    kgrid.decode(i, ki.data());
    std::size_t src = 0;
    double ksum = 0.0;
    for (int a = 0; a < d; ++a) {
      const int j = jidx[ki[a]];
      src = src * n + std::size_t((j % n + n) % n);
      ksum += kgrid.axis[ki[a]];
    }
    out[i] = norm * std::polar(1.0, E * ksum) * G[src];
  }
  return out;
}

Field inverse_impl(const Field& t, const Grid& kgrid, const Grid& xgrid,
                   bool uniform) {
  const int d = xgrid.dim;
  const int n = xgrid.points_per_axis;
  if (t.size() != kgrid.size())
    throw ConfigError("classical_inverse: field/grid mismatch");

  const double dkvol = std::pow(kgrid.spacing(), d);
  Field G(xgrid.size(), cplx(0.0));
  const std::vector<int> jidx = freq_indices(kgrid);
  const double E = xgrid.extent;
  std::vector<int> ki(d);
  for (std::size_t i = 0; i < t.size(); ++i) {
    kgrid.decode(i, ki.data());
    std::size_t dst = 0;
    double ksum = 0.0;
    for (int a = 0; a < d; ++a) {
      const int j = jidx[ki[a]];
      dst = dst * n + std::size_t((j % n + n) % n);
      ksum += kgrid.axis[ki[a]];
    }
    G[dst] += (uniform ? dkvol : kgrid.weight(i)) *
              std::polar(1.0, -E * ksum) * t[i];
  }
  Field u = fft_nd(G, std::vector<int>(d, n), +1);
  const double norm = std::pow(2.0 * pi, -0.5 * d);
  for (cplx& v : u) v *= norm;
  return u;
}

}  // namespace

Field classical_forward(const Field& f, const Grid& xgrid, const Grid& kgrid) {
  return forward_impl(f, xgrid, kgrid, false);
}

Field classical_inverse(const Field& t, const Grid& kgrid, const Grid& xgrid) {
  return inverse_impl(t, kgrid, xgrid, false);
}

Field unitary_forward(const Field& f, const Grid& xgrid, const Grid& kgrid) {
  return forward_impl(f, xgrid, kgrid, true);
}

Field unitary_inverse(const Field& t, const Grid& kgrid, const Grid& xgrid) {
  return inverse_impl(t, kgrid, xgrid, true);
}

Field classical_forward_at(const Field& f, const Grid& xgrid,
                           const double* pts, std::size_t npts) {
  const int d = xgrid.dim;
  const int n = xgrid.points_per_axis;
  if (f.size() != xgrid.size())
    throw ConfigError("classical_forward_at: field/grid mismatch");
  const double norm = std::pow(2.0 * pi, -0.5 * d);
  Field out(npts, cplx(0.0));
  // Separable phase tables per axis keep the cost at O(npts * nodes).
  std::vector<cplx> ax(std::size_t(d) * n);
  std::vector<int> xi(d);
  for (std::size_t p = 0; p < npts; ++p) {
    const double* k = pts + std::size_t(d) * p;
    for (int a = 0; a < d; ++a)
      for (int i = 0; i < n; ++i)
        ax[std::size_t(a) * n + i] = std::polar(1.0, -k[a] * xgrid.axis[i]);
    cplx acc = 0.0;
    std::fill(xi.begin(), xi.end(), 0);
    for (std::size_t i = 0; i < f.size(); ++i) {
      cplx ph = ax[std::size_t(xi[0])];
      for (int a = 1; a < d; ++a) ph *= ax[std::size_t(a) * n + xi[a]];
      acc += xgrid.weight(i) * f[i] * ph;
      int a = d - 1;
      while (a >= 0 && ++xi[a] == n) xi[a--] = 0;
    }
    out[p] = norm * acc;
  }
  return out;
}

RadialConvolver::RadialConvolver(const Grid& grid,
                                 const std::function<cplx(double)>& kernel,
                                 cplx center) {
  const int d = grid.dim;
  const int n = grid.points_per_axis;
  const int p = 2 * n;
  shape_.assign(d, n);
  padded_shape_.assign(d, p);
  const double h = grid.spacing();
  std::size_t total = 1;
  for (int a = 0; a < d; ++a) total *= std::size_t(p);
  Field K(total);
  std::vector<int> off(d);
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t rem = i;
    double r2 = 0.0;
    for (int a = d - 1; a >= 0; --a) {
      int t = int(rem % p);
      rem /= p;
      if (t > p / 2) t -= p;
      off[a] = t;
      r2 += double(t) * t;
    }
    const double r = h * std::sqrt(r2);
    K[i] = (r == 0.0) ? center : kernel(r);
  }
  kernel_fft_ = fft_nd(K, padded_shape_, -1);
}

Field RadialConvolver::apply(const Field& g) const {
  const int d = int(shape_.size());
  const int n = shape_[0];
  const int p = padded_shape_[0];
  std::size_t total = kernel_fft_.size();
  Field pad(total, cplx(0.0));
  std::vector<int> xi(d);
  // scatter g into the low corner of the padded box
  std::size_t gn = g.size();
  for (std::size_t i = 0; i < gn; ++i) {
    std::size_t rem = i, dst = 0;
    for (int a = d - 1; a >= 0; --a) {
      xi[a] = int(rem % n);
      rem /= n;
    }
    for (int a = 0; a < d; ++a) dst = dst * p + std::size_t(xi[a]);
    pad[dst] = g[i];
  }
  Field G = fft_nd(pad, padded_shape_, -1);
  for (std::size_t i = 0; i < total; ++i) G[i] *= kernel_fft_[i];
  Field conv = fft_nd(G, padded_shape_, +1);
  const double scale = 1.0 / double(total);
  Field out(gn);
  for (std::size_t i = 0; i < gn; ++i) {
    std::size_t rem = i, src = 0;
    for (int a = d - 1; a >= 0; --a) {
      xi[a] = int(rem % n);
      rem /= n;
    }
    for (int a = 0; a < d; ++a) src = src * p + std::size_t(xi[a]);
    out[i] = conv[src] * scale;
  }
  return out;
}

}  // namespace nfsolv
