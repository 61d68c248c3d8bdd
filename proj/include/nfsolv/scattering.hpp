#pragma once

#include <memory>

#include "nfsolv/common.hpp"
#include "nfsolv/fft.hpp"
#include "nfsolv/grid.hpp"
#include "nfsolv/potential.hpp"

namespace nfsolv {

// Closed-form contraction certificate for Q (sup-norm bound) together with
// the optimizing splitting radius.
struct QNormBound {
  double bound = 0.0;
  double optimal_radius = 0.0;
};

QNormBound q_norm_bound(const PotentialSpec& V);

// L^p norm of the analytic potential on all of R^3 (closed form for the
// gaussian family, high-resolution radial quadrature otherwise).
double potential_lp_norm(const PotentialSpec& V, double p);

// Lattice-corrected coefficient for the central cell of the 1/r kernel:
// sum_{m != 0, cubic lattice} 1/|m| differs from the integral by -C0 per unit
// cell, so assigning K(0) = C0/h restores the continuum convolution to
// fourth order in h.
inline constexpr double coulomb_lattice_c0 = 2.8372974794806;

// The operator (Q phi)(x) = -(1/4pi) int e^{i|k||x-y|}/|x-y| V(y) phi(y) dy
// discretized on a box grid, with the FFT convolution and the corrected
// central cell. Adjoint is taken with respect to the weighted inner product.
class QOperator {
 public:
  QOperator(const Field& V, const Grid& grid, double k_modulus);

  Field apply(const Field& phi) const;           // Q phi
  Field apply_adjoint(const Field& psi) const;   // Q* psi
  // Scalar factor S of the gradient kernel: (grad_k Q phi)_j = (k_j/|k|) S phi
  // with S the convolution against -(i/4pi) e^{i|k| r}.
  Field apply_grad_scalar(const Field& phi) const;

  double k_modulus() const { return kappa_; }

 private:
  const Grid grid_;
  double kappa_;
  Field vw_;  // V(y) * w(y), folded quadrature weights
  std::unique_ptr<RadialConvolver> conv_;
  mutable std::unique_ptr<RadialConvolver> conv_adj_;
  mutable std::unique_ptr<RadialConvolver> conv_grad_;
};

Field apply_Q(const Field& phi, double k_modulus, const Field& V,
              const Grid& grid);

// Neumann sum sum_{n>=0} Q^n rhs with the geometric tail certificate
// q^{n+1}/(1-q) * ||rhs||_inf < tol.
Field neumann_inverse(const QOperator& q, const Field& rhs, double q_bound,
                      double tol, int max_iter, int* iterations = nullptr);
// Same for the adjoint.
Field neumann_inverse_adjoint(const QOperator& q, const Field& rhs,
                              double q_bound, double tol, int max_iter,
                              int* iterations = nullptr);

struct ScatteringState {
  Vec3 k{};
  Field values;
  int iterations = 0;
  double series_tail_bound = 0.0;
  double sup_norm = 0.0;
  double q_norm_bound = 0.0;
  double residual_sup = 0.0;       // || phi - free - Q phi ||_inf
  bool wavelength_resolved = true; // h <= (2pi/|k|)/8 when |k| > 0
};

struct GradState {
  Vec3 k{};
  std::array<Field, 3> values;
  double grad_q_bound = 0.0;  // (1/4pi) ||V||_L1
};

Field free_wave(const Vec3& k, const Grid& grid);

ScatteringState scattering_state(const Vec3& k, const PotentialSpec& V,
                                 const Grid& grid, double tol,
                                 int max_iter = 200);

GradState grad_scattering_state(const Vec3& k, const PotentialSpec& V,
                                const Grid& grid, double tol,
                                int max_iter = 200);

}  // namespace nfsolv
