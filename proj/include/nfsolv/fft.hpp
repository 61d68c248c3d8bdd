#pragma once

#include <functional>

#include "nfsolv/common.hpp"
#include "nfsolv/grid.hpp"

namespace nfsolv {

// Unnormalized multi-dimensional DFT (FFTW convention, sign = -1 forward).
Field fft_nd(const Field& in, const std::vector<int>& shape, int sign);

// Classical continuum Fourier transform on matched box grids,
//   fhat(k) = (2pi)^{-d/2} sum_x w(x) f(x) e^{-i k.x},
// realized as a phased FFT; kgrid must be dual_grid(xgrid).
Field classical_forward(const Field& f, const Grid& xgrid, const Grid& kgrid);

// Inverse: u(x) = (2pi)^{-d/2} sum_k w(k) t(k) e^{+i k.x}.
Field classical_inverse(const Field& t, const Grid& kgrid, const Grid& xgrid);

// Same transforms with uniform DFT weights (h^d and dk^d everywhere, no
// trapezoid end corrections). On this pair forward(inverse(t)) == t exactly,
// which solvers rely on when fields do not decay inside the box.
Field unitary_forward(const Field& f, const Grid& xgrid, const Grid& kgrid);
Field unitary_inverse(const Field& t, const Grid& kgrid, const Grid& xgrid);

// Direct evaluation of the forward transform at arbitrary k points
// (point-major layout, npts * dim entries).
Field classical_forward_at(const Field& f, const Grid& xgrid,
                           const double* pts, std::size_t npts);

// Discrete convolution with a radial kernel on the box grid:
//   out(x) = sum_y K(|x - y|) g(y),
// via zero-padding to twice the axis size. `center` replaces K(0).
class RadialConvolver {
 public:
  RadialConvolver(const Grid& grid, const std::function<cplx(double)>& kernel,
                  cplx center);
  Field apply(const Field& g) const;

 private:
  std::vector<int> padded_shape_;
  std::vector<int> shape_;
  Field kernel_fft_;
};

}  // namespace nfsolv
