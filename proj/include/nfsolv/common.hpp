#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace nfsolv {

using cplx = std::complex<double>;
using Field = std::vector<cplx>;
using RealField = std::vector<double>;
using Vec3 = std::array<double, 3>;

inline constexpr double pi = 3.14159265358979323846;

// Base for all library errors; subcommands map these to exit code 1.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid parameters or malformed configuration.
struct ConfigError : Error {
  using Error::Error;
};

// Node/storage count would exceed the configured memory budget.
struct BudgetError : Error {
  using Error::Error;
};

// The Neumann-series contraction bound is >= 1; the series has no
// convergence certificate and the solver refuses to run.
struct ContractionError : Error {
  using Error::Error;
};

// An iteration hit its cap before the certified tail bound reached tol.
struct ConvergenceError : Error {
  using Error::Error;
};

// A structural hypothesis on the transverse spectrum failed
// (no zero mode, or a nonnegative eigenvalue below the asymptote).
struct SpectrumAssumptionError : Error {
  using Error::Error;
};

// A necessary orthogonality/moment condition failed and a reconstruction
// was requested anyway.
struct ConditionFailure : Error {
  using Error::Error;
};

inline double sqr(double x) { return x * x; }

}  // namespace nfsolv
