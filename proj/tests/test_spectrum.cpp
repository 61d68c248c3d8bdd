#include <doctest.h>

#include <cmath>
#include <random>

#include "nfsolv/grid.hpp"
#include "nfsolv/potential.hpp"
#include "nfsolv/spectrum.hpp"

using namespace nfsolv;

namespace {
PotentialSpec pt_spec(double v_plus = 1.0, double lambda = 2.0) {
  PotentialSpec V;
  V.family = PotentialFamily::poschl_teller;
  V.lambda = lambda;
  V.v_plus = v_plus;
  return V;
}

PotentialSpec well_spec(double beta, double v_plus = 1.0) {
  PotentialSpec V;
  V.family = PotentialFamily::gaussian_well;
  V.beta = beta;
  V.c = 1.0;
  V.v_plus = v_plus;
  return V;
}
}  // namespace

TEST_CASE("Poschl-Teller spectrum: two levels below the asymptote") {
  const Grid yg = build_box_grid(1, 20.0, 1025);
  const HOperator h = discretize_h(pt_spec(), yg);
  const SpectrumDecomposition sd = spectrum_below_vplus(h, 1.0, 1e-2);

  REQUIRE(sd.eigenvalues.size() == 2u);
  CHECK(sd.eigenvalues[0] == doctest::Approx(-3.0).epsilon(1e-3));
  CHECK(std::abs(sd.eigenvalues[1]) < 1e-2);
  CHECK(sd.multiplicities == std::vector<int>{1, 1});
  REQUIRE(sd.zero_index.has_value());
  CHECK(*sd.zero_index == 2);
  CHECK(sd.e_next > 0.0);

  // quadrature orthonormality
  for (std::size_t i = 0; i < sd.eigenvectors.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      double dot = 0.0;
      for (std::size_t m = 0; m < yg.size(); ++m)
        dot += yg.weight(m) * sd.eigenvectors[i][m] * sd.eigenvectors[j][m];
      CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) < 1e-10);
    }

  // eigen-residual of the discrete operator
  const double hs = yg.spacing();
  for (std::size_t i = 0; i < sd.eigenvectors.size(); ++i) {
    const RealField& v = sd.eigenvectors[i];
    const double e = sd.eigenvalues[i];
    double num = 0.0;
    std::vector<double> y(1);
    for (std::size_t m = 1; m + 1 < yg.size(); ++m) {
      yg.node(m, y.data());
      const double hv = -(v[m + 1] - 2.0 * v[m] + v[m - 1]) / (hs * hs) +
                        pt_spec().eval(y.data(), 1) * v[m];
      num += yg.weight(m) * sqr(hv - e * v[m]);
    }
    CHECK(std::sqrt(num) < 1e-8);
  }

  // ground state has the sech^2 shape (no node), zero mode is odd
  const RealField& ground = sd.eigenvectors[0];
  const RealField& zero = sd.eigenvectors[1];
  const std::size_t mid = yg.size() / 2;
  CHECK(std::abs(zero[mid]) < 1e-6);
  CHECK(std::abs(ground[mid]) > 0.1);
}

TEST_CASE("constant potential has no discrete spectrum: typed violation") {
  const Grid yg = build_box_grid(1, 20.0, 513);
  const HOperator h = discretize_h(well_spec(0.0), yg);
  CHECK_THROWS_AS(spectrum_below_vplus(h, 1.0, 1e-8),
                  SpectrumAssumptionError);
}

TEST_CASE("positive eigenvalue below the asymptote is a violation") {
  // shallow well: bound state exists but sits above zero when v_plus is large
  const Grid yg = build_box_grid(1, 20.0, 513);
  const HOperator h = discretize_h(well_spec(1.0, 2.0), yg);
  CHECK_THROWS_AS(spectrum_below_vplus(h, 2.0, 1e-8),
                  SpectrumAssumptionError);
}

TEST_CASE("2D isotropic well: degenerate excited level merged by clustering") {
  const Grid yg = build_box_grid(2, 6.0, 41);
  const HOperator h = discretize_h(well_spec(20.0, 0.0), yg);
  const SpectrumDecomposition sd =
      spectrum_below_vplus_unchecked(h, 0.0, 1e-8);
  REQUIRE(sd.eigenvalues.size() >= 2u);
  CHECK(sd.multiplicities[0] == 1);
  CHECK(sd.multiplicities[1] == 2);  // p_x / p_y pair, exact on the square grid
}

TEST_CASE("tune_zero_mode on v_plus") {
  const Grid yg = build_box_grid(1, 20.0, 1025);
  const TuneResult tr =
      tune_zero_mode(pt_spec(), yg, 2, 1e-8, TuneParameter::v_plus, 0.5, 1.5);
  CHECK(std::abs(tr.achieved_e) <= 1e-8);
  CHECK(tr.value == doctest::Approx(1.0).epsilon(1e-2));
  CHECK(tr.iterations > 0);

  // already tuned: zero iterations
  const TuneResult again = tune_zero_mode(tr.spec, yg, 2, 1e-7,
                                          TuneParameter::v_plus, 0.5, 1.5);
  CHECK(again.iterations == 0);

  // bracket that does not straddle
  CHECK_THROWS_AS(
      tune_zero_mode(pt_spec(), yg, 2, 1e-8, TuneParameter::v_plus, 5.0, 6.0),
      ConfigError);
}

TEST_CASE("tune_zero_mode on the well depth") {
  const Grid yg = build_box_grid(1, 20.0, 1025);
  const TuneResult tr = tune_zero_mode(well_spec(2.0), yg, 1, 1e-10,
                                       TuneParameter::beta, 0.2, 6.0);
  CHECK(std::abs(tr.achieved_e) <= 1e-10);
  CHECK(tr.spec.beta == doctest::Approx(tr.value));
}

TEST_CASE("project_channels decomposition and reconstruction") {
  const Grid yg = build_box_grid(1, 20.0, 257);
  const Grid xg = build_box_grid(1, 10.0, 64);
  PotentialSpec V = pt_spec();
  const HOperator h = discretize_h(V, yg);
  const SpectrumDecomposition sd = spectrum_below_vplus(h, 1.0, 1e-1);
  REQUIRE(sd.eigenvectors.size() == 2u);

  const std::size_t nx = xg.size(), ny = yg.size();
  const Field vx = sample(xg, [](const double* x) {
    return std::exp(-x[0] * x[0]);
  });

  SUBCASE("single channel is returned exactly") {
    Field g(nx * ny);
    for (std::size_t ix = 0; ix < nx; ++ix)
      for (std::size_t iy = 0; iy < ny; ++iy)
        g[ix * ny + iy] = vx[ix] * sd.eigenvectors[1][iy];
    const ChannelDecomposition cd = project_channels(g, sd, xg, yg);
    REQUIRE(cd.channels.size() == 2u);
    double worst = 0.0, rem = 0.0;
    for (std::size_t ix = 0; ix < nx; ++ix) {
      worst = std::max(worst, std::abs(cd.channels[1].v[ix] - vx[ix]));
      worst = std::max(worst, std::abs(cd.channels[0].v[ix]));
    }
    for (const cplx& r : cd.remainder) rem = std::max(rem, std::abs(r));
    CHECK(worst < 1e-10);
    CHECK(rem < 1e-10);
    CHECK(cd.schwarz_max_excess <= 1e-10);
  }

  SUBCASE("two equal channels") {
    Field g(nx * ny);
    for (std::size_t ix = 0; ix < nx; ++ix)
      for (std::size_t iy = 0; iy < ny; ++iy)
        g[ix * ny + iy] =
            vx[ix] * (sd.eigenvectors[0][iy] + sd.eigenvectors[1][iy]);
    const ChannelDecomposition cd = project_channels(g, sd, xg, yg);
    for (std::size_t ix = 0; ix < nx; ++ix)
      CHECK(std::abs(cd.channels[0].v[ix] - cd.channels[1].v[ix]) < 1e-10);
  }

  SUBCASE("random smooth g reconstructs") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    Field g(nx * ny);
    std::vector<double> x(1), y(1);
    for (std::size_t ix = 0; ix < nx; ++ix) {
      xg.node(ix, x.data());
      for (std::size_t iy = 0; iy < ny; ++iy) {
        yg.node(iy, y.data());
        g[ix * ny + iy] = std::exp(-0.3 * x[0] * x[0] - 0.2 * y[0] * y[0]) *
                          (1.0 + 0.2 * std::sin(3.0 * x[0] + 2.0 * y[0]));
      }
    }
    const ChannelDecomposition cd = project_channels(g, sd, xg, yg);
    double num = 0.0, den = 0.0;
    for (std::size_t ix = 0; ix < nx; ++ix)
      for (std::size_t iy = 0; iy < ny; ++iy) {
        cplx rec = cd.remainder[ix * ny + iy];
        for (std::size_t c = 0; c < cd.channels.size(); ++c)
          rec += cd.channels[c].v[ix] * sd.eigenvectors[c][iy];
        const double w = xg.weight(ix) * yg.weight(iy);
        num += w * std::norm(rec - g[ix * ny + iy]);
        den += w * std::norm(g[ix * ny + iy]);
      }
    CHECK(std::sqrt(num / den) < 1e-10);
    CHECK(cd.schwarz_max_excess <= 1e-10);
  }
}
