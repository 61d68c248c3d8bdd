#pragma once

#include <optional>
#include <utility>

#include "nfsolv/common.hpp"
#include "nfsolv/grid.hpp"
#include "nfsolv/potential.hpp"

namespace nfsolv {

// h = -Laplace_y + V(y) on the truncated y-box with Dirichlet walls,
// second-order central differences on the interior nodes.
struct HOperator {
  Grid ygrid;
  RealField vdiag;  // potential at interior nodes

  std::size_t interior_size() const { return vdiag.size(); }
};

HOperator discretize_h(const PotentialSpec& V, const Grid& ygrid);

// Full discrete spectrum of h; vectors live on the full y-grid (zero at the
// walls) and are orthonormal under the grid quadrature.
struct EigenSystem {
  std::vector<double> values;      // ascending
  std::vector<RealField> vectors;
};

EigenSystem eigensolve(const HOperator& h);

struct SpectrumDecomposition {
  double v_plus = 0.0;
  double zero_tol = 0.0;
  double cluster_tol = 0.0;
  std::vector<double> eigenvalues;     // distinct clusters below v_plus
  std::vector<int> multiplicities;
  std::vector<RealField> eigenvectors; // one per (j,k), ordered by cluster
  std::vector<std::pair<int, int>> channel_index;  // (j,k), both 1-based
  std::optional<int> zero_index;       // N with |e_N| <= zero_tol (1-based)
  double e_next = 0.0;                 // smallest eigenvalue above zero_tol
};

inline double default_cluster_tol(double v_plus) {
  return 1e-6 * std::max(1.0, std::abs(v_plus));
}

// Extracts the discrete spectrum below v_plus with clustered multiplicities
// and verifies the classification: all e_j < 0 before the zero mode, a zero
// mode present, nothing nonnegative besides it. Violations throw
// SpectrumAssumptionError; an ambiguous zero (two distinct clusters within
// zero_tol of 0) throws Error.
SpectrumDecomposition spectrum_below_vplus(const HOperator& h, double v_plus,
                                           double zero_tol,
                                           double cluster_tol = -1.0);

// Same extraction without the classification check (used during tuning).
SpectrumDecomposition spectrum_below_vplus_unchecked(const HOperator& h,
                                                     double v_plus,
                                                     double zero_tol,
                                                     double cluster_tol = -1.0);

enum class TuneParameter { v_plus, beta };

struct TuneResult {
  double value = 0.0;       // tuned parameter
  double achieved_e = 0.0;  // e at target_index after tuning
  int iterations = 0;
  PotentialSpec spec;       // input spec with the tuned parameter substituted
};

// Bisection on one parameter of the family until the target eigenvalue
// (1-based, counting multiplicity, ascending) satisfies |e| <= zero_tol.
TuneResult tune_zero_mode(const PotentialSpec& family, const Grid& ygrid,
                          int target_index, double zero_tol,
                          TuneParameter param, double lo, double hi);

// Channel projections of a field on the (x,y) tensor grid (x-major layout:
// flat = ix * ygrid.size() + iy).
struct ChannelRHS {
  int j = 0, k = 0;  // cluster and in-cluster index, 1-based
  double eigenvalue = 0.0;
  Field v;           // v_j^k(x) on the x-grid
};

struct ChannelDecomposition {
  std::vector<ChannelRHS> channels;
  Field remainder;               // P_+ component on the tensor grid
  double schwarz_max_excess = 0.0;  // max over nodes of |v| - sqrt(int |g|^2 dy)
};

ChannelDecomposition project_channels(const Field& g,
                                      const SpectrumDecomposition& spec,
                                      const Grid& xgrid, const Grid& ygrid);

// Apply the discrete h along the y factor of a tensor field.
Field apply_h_tensor(const Field& g, const HOperator& h, const Grid& xgrid);

}  // namespace nfsolv
