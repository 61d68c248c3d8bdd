#include <doctest.h>

#include <cmath>

#include "nfsolv/grid.hpp"
#include "nfsolv/potential.hpp"
#include "nfsolv/scattering.hpp"

using namespace nfsolv;

namespace {
PotentialSpec gaussian_spec(double beta, double c = 1.0) {
  PotentialSpec V;
  V.family = PotentialFamily::gaussian;
  V.beta = beta;
  V.c = c;
  return V;
}

double sup_diff(const Field& a, const Field& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}
}  // namespace

TEST_CASE("q_norm_bound closed form and scaling") {
  PotentialSpec zero;
  CHECK(q_norm_bound(zero).bound == 0.0);

  const QNormBound b1 = q_norm_bound(gaussian_spec(1.0));
  CHECK(b1.bound == doctest::Approx(0.572).epsilon(2e-3));
  CHECK(b1.optimal_radius > 0.0);

  const QNormBound b2 = q_norm_bound(gaussian_spec(2.0));
  CHECK(b2.bound == doctest::Approx(2.0 * b1.bound).epsilon(1e-12));
}

TEST_CASE("apply_Q radial oracle at the origin") {
  const Grid g = build_box_grid(3, 8.0, 33);  // odd: contains the origin node
  const double beta = 1.0;
  const Field V = eval_field(gaussian_spec(beta), g);
  const Field ones(g.size(), cplx(1.0));
  const Field q1 = apply_Q(ones, 0.0, V, g);

  // (Q 1)(0) = (beta/4pi) int e^{-r^2}/r d^3y = beta/2
  std::size_t origin = 0;
  double best = 1e30;
  std::vector<double> x(3);
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.node(i, x.data());
    const double r2 = sqr(x[0]) + sqr(x[1]) + sqr(x[2]);
    if (r2 < best) { best = r2; origin = i; }
  }
  REQUIRE(best < 1e-20);
  CHECK(q1[origin].real() == doctest::Approx(beta / 2.0).epsilon(1e-3));
  CHECK(std::abs(q1[origin].imag()) < 1e-12);

  // sup-norm contraction against the Lemma 2.1 certificate
  double sup = 0.0;
  for (const cplx& v : q1) sup = std::max(sup, std::abs(v));
  CHECK(sup <= q_norm_bound(gaussian_spec(beta)).bound + 1e-3);

  // V = 0 annihilates
  const Field qz = apply_Q(ones, 1.0, Field(g.size(), cplx(0.0)), g);
  CHECK(sup_diff(qz, Field(g.size(), cplx(0.0))) == 0.0);
}

TEST_CASE("scattering state: V = 0 plane-wave path is exact") {
  const Grid g = build_box_grid(3, 8.0, 24);
  const Vec3 k{0.3, -0.2, 0.9};
  const ScatteringState s = scattering_state(k, PotentialSpec{}, g, 1e-8);
  CHECK(s.iterations == 0);
  CHECK(s.residual_sup == 0.0);
  const Field free = free_wave(k, g);
  for (std::size_t i = 0; i < free.size(); ++i) {
    REQUIRE(s.values[i] == free[i]);  // bit-for-bit
  }
}

TEST_CASE("scattering state: iteration count from the geometric certificate") {
  const Grid g = build_box_grid(3, 8.0, 32);
  const PotentialSpec V = gaussian_spec(0.5);
  const double q = q_norm_bound(V).bound;
  const ScatteringState s = scattering_state({0.0, 0.0, 0.0}, V, g, 1e-8);
  CHECK(s.iterations <= int(std::ceil(std::log(1e-8) / std::log(q))));
  CHECK(s.series_tail_bound < 1e-8);
  CHECK(s.q_norm_bound == doctest::Approx(q));
}

TEST_CASE("Lippmann-Schwinger residual and Corollary 2.2 bound") {
  const Grid g = build_box_grid(3, 8.0, 32);
  const PotentialSpec V = gaussian_spec(1.0);
  const double tol = 1e-8;
  const ScatteringState s = scattering_state({0.0, 0.0, 1.0}, V, g, tol);
  CHECK(s.residual_sup <= 10.0 * tol);
  CHECK(s.sup_norm <=
        std::pow(2.0 * pi, -1.5) / (1.0 - s.q_norm_bound) + 1e-6);
  CHECK(s.wavelength_resolved);
}

TEST_CASE("contraction violation refused") {
  const Grid g = build_box_grid(3, 6.0, 16);
  CHECK_THROWS_AS(scattering_state({0.0, 0.0, 1.0}, gaussian_spec(2.0), g, 1e-8),
                  ContractionError);
}

TEST_CASE("gradient state: V = 0 closed form and k = 0 rejection") {
  const Grid g = build_box_grid(3, 6.0, 16);
  const Vec3 k{0.2, 0.0, 0.7};
  const GradState gs = grad_scattering_state(k, PotentialSpec{}, g, 1e-8);
  const Field free = free_wave(k, g);
  std::vector<double> x(3);
  for (std::size_t i = 0; i < g.size(); i += 37) {
    g.node(i, x.data());
    for (int j = 0; j < 3; ++j) {
      const cplx expect = cplx(0.0, x[j]) * free[i];
      CHECK(std::abs(gs.values[j][i] - expect) < 1e-12);
    }
  }
  CHECK_THROWS_AS(
      grad_scattering_state({0.0, 0.0, 0.0}, PotentialSpec{}, g, 1e-8),
      ConfigError);
}

TEST_CASE("gradient bound and finite-difference consistency") {
  const Grid g = build_box_grid(3, 8.0, 24);
  const PotentialSpec V = gaussian_spec(1.0);
  const GradState gs = grad_scattering_state({0.0, 0.0, 1.0}, V, g, 1e-10);
  CHECK(gs.grad_q_bound ==
        doctest::Approx(std::pow(pi, 1.5) / (4.0 * pi)).epsilon(1e-10));
  CHECK(gs.grad_q_bound == doctest::Approx(0.443).epsilon(1e-2));

  const double d = 1e-3;
  const ScatteringState sp = scattering_state({0.0, 0.0, 1.0 + d}, V, g, 1e-10);
  const ScatteringState sm = scattering_state({0.0, 0.0, 1.0 - d}, V, g, 1e-10);
  double werr = 0.0, wmag = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const cplx fd = (sp.values[i] - sm.values[i]) / (2.0 * d);
    werr = std::max(werr, std::abs(fd - gs.values[2][i]));
    wmag = std::max(wmag, std::abs(fd));
  }
  CHECK(werr / wmag < 5e-3);
}
