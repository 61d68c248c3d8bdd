#pragma once

#include "nfsolv/common.hpp"
#include "nfsolv/grid.hpp"

namespace nfsolv {

enum class PotentialFamily {
  zero,
  gaussian,
  poschl_teller,
  rational_decay,
  gaussian_well
};

// Analytic potential families:
//   gaussian:       V(x) = -beta * exp(-c|x|^2)          (decaying well)
//   poschl_teller:  V(y) = v_plus - lambda(lambda+1) sech^2(y), dim 1 only
//   rational_decay: V(x) = beta / (1 + |x|^q)
//   gaussian_well:  V(y) = v_plus - beta * exp(-c|y|^2)  (asymptote v_plus)
//   zero:           V = 0
struct PotentialSpec {
  PotentialFamily family = PotentialFamily::zero;
  double beta = 0.0;    // amplitude
  double c = 1.0;       // gaussian width
  double lambda = 0.0;  // well index
  double v_plus = 0.0;  // asymptote
  double q = 4.0;       // decay power

  double eval(const double* x, int dim) const;
  // Asymptotic value at infinity (0 for decaying families, v_plus for
  // poschl_teller).
  double asymptote() const;
  bool decays_to_zero() const {
    return family != PotentialFamily::poschl_teller &&
           family != PotentialFamily::gaussian_well;
  }
};

// Closed-form source families used for right-hand sides:
//   gaussian:    amplitude * exp(-c|x|^2)
//   x1_gaussian: x_1 * exp(-c|x|^2)
//   hermite:     (x_1^2 - 1/2) * exp(-x_1^2) * exp(-c|x'|^2)
//   ball:        amplitude * indicator(|x| <= radius)
//   zero
struct SourceSpec {
  enum class Family { zero, gaussian, x1_gaussian, hermite, ball } family =
      Family::zero;
  double amplitude = 1.0;
  double c = 1.0;
  double radius = 1.0;

  double eval(const double* x, int dim) const;
};

struct AssumptionReport {
  double norm_inf = 0.0;
  double norm_4_3 = 0.0;
  double norm_3_2 = 0.0;
  double norm_1 = 0.0;
  double smallness_value = 0.0;  // 4^{1/9} (9/8) (4pi)^{-2/3} |V|_inf^{1/9} |V|_{4/3}^{8/9}
  double hls_value = 0.0;        // sqrt(c_hls) * |V|_{3/2}, compared against 4pi
  double c_hls_used = 0.0;
  bool decay_ok = false;
  double envelope_C = 0.0;    // max over shells of |V(x)| (1+|x|^{3.5+eps})
  double envelope_eps = 0.0;  // taken from the family's analytic decay
  double f_l2 = 0.0;
  double xf_l1 = 0.0;
  double f_l1_bound = 0.0;  // f_l2 sqrt(4pi/3) + xf_l1
  bool passed = false;
};

Field eval_field(const PotentialSpec& spec, const Grid& grid);
Field eval_field(const SourceSpec& spec, const Grid& grid);

template <typename F>
Field sample(const Grid& grid, F&& fn) {
  Field out(grid.size());
  std::vector<double> x(grid.dim);
  for (std::size_t i = 0; i < out.size(); ++i) {
    grid.node(i, x.data());
    out[i] = fn(x.data());
  }
  return out;
}

// (sum w_i |v_i|^p)^{1/p}; p = infinity given as p <= 0 or the lp_inf constant.
inline constexpr double lp_inf = -1.0;
double lp_norm(const Field& field, double p, const Grid& grid);

// Sharp Hardy-Littlewood-Sobolev constant for the |x-y|^{-2} kernel in R^3:
// pi^{3/2} * (sqrt(pi)/4)^{-1/3}.
double c_hls_default();

AssumptionReport check_assumption_1_1(const PotentialSpec& V, const Field& f,
                                      const Grid& grid, double c_hls);

// ||f||_{L2} sqrt(4pi/3) + || |x| f ||_{L1}; asserts measured ||f||_{L1} does
// not exceed it.
double fact1_l1_bound(const Field& f, const Grid& grid);

double rollnik_norm(const Field& V, const Grid& grid,
                    std::size_t pair_budget = std::size_t(4) << 28);

}  // namespace nfsolv
