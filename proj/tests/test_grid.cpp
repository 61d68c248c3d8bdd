#include <doctest.h>

#include <cmath>
#include <set>

#include "nfsolv/grid.hpp"
#include "nfsolv/potential.hpp"

using namespace nfsolv;

TEST_CASE("box grid volume identity") {
  const Grid g3 = build_box_grid(3, 8.0, 32);
  double wsum = 0.0;
  for (std::size_t i = 0; i < g3.size(); ++i) wsum += g3.weight(i);
  CHECK(g3.size() == 32u * 32 * 32);
  CHECK(wsum == doctest::Approx(16.0 * 16.0 * 16.0).epsilon(1e-12));

  const Grid g2 = build_box_grid(2, 5.0, 64);
  wsum = 0.0;
  for (std::size_t i = 0; i < g2.size(); ++i) wsum += g2.weight(i);
  CHECK(wsum == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("grid nodes symmetric under negation, uniform spacing") {
  const Grid g = build_box_grid(2, 3.0, 10);
  std::set<std::pair<long long, long long>> nodes;
  const auto key = [](double v) { return llround(v * 1e12); };
  double x[2];
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.node(i, x);
    nodes.insert({key(x[0]), key(x[1])});
  }
  for (const auto& [a, b] : nodes) CHECK(nodes.count({-a, -b}) == 1);
  for (std::size_t i = 2; i < g.axis.size(); ++i)
    CHECK(g.axis[i] - g.axis[i - 1] ==
          doctest::Approx(g.axis[1] - g.axis[0]).epsilon(1e-12));
}

TEST_CASE("node budget enforced") {
  CHECK_THROWS_AS(build_box_grid(3, 8.0, 4096), BudgetError);
}

TEST_CASE("integrate gaussian matches pi^{3/2}") {
  const Grid g = build_box_grid(3, 8.0, 64);
  const Field f = sample(g, [](const double* x) {
    return std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
  });
  const cplx v = integrate(f, g);
  CHECK(v.real() == doctest::Approx(std::pow(pi, 1.5)).epsilon(1e-8));
  CHECK(v.imag() == doctest::Approx(0.0));
}

TEST_CASE("dual grid is odd, symmetric, FFT-spaced") {
  const Grid x = build_box_grid(3, 8.0, 32);
  const Grid k = dual_grid(x);
  CHECK(k.points_per_axis % 2 == 1);
  CHECK(k.axis[(k.points_per_axis - 1) / 2] == doctest::Approx(0.0));
  CHECK(k.spacing() ==
        doctest::Approx(2.0 * pi / (32 * x.spacing())).epsilon(1e-12));
  CHECK(k.axis.front() == doctest::Approx(-k.axis.back()).epsilon(1e-12));
}

TEST_CASE("sphere sampling: radii and surface measure") {
  for (int dim : {1, 2, 3, 4, 5}) {
    const double r = 1.7;
    const SphereSampling s = sphere_sampling(dim, r, 12);
    double wsum = 0.0;
    for (std::size_t i = 0; i < s.count(); ++i) {
      double n2 = 0.0;
      for (int d = 0; d < dim; ++d) n2 += sqr(s.point(i)[d]);
      CHECK(std::sqrt(n2) == doctest::Approx(r).epsilon(1e-12));
      wsum += s.weights[i];
    }
    CHECK(wsum ==
          doctest::Approx(sphere_surface_measure(dim, r)).epsilon(1e-10));
  }
}

TEST_CASE("sphere quadrature integrates linear functions to zero") {
  const SphereSampling s = sphere_sampling(3, 2.0, 16);
  double acc[3] = {0, 0, 0};
  for (std::size_t i = 0; i < s.count(); ++i)
    for (int d = 0; d < 3; ++d) acc[d] += s.weights[i] * s.point(i)[d];
  const double total = sphere_surface_measure(3, 2.0);
  for (int d = 0; d < 3; ++d) CHECK(std::abs(acc[d]) / total < 1e-2);
}

TEST_CASE("radius-zero sphere degenerates to the origin") {
  const SphereSampling s = sphere_sampling(3, 0.0, 8);
  REQUIRE(s.count() == 1u);
  CHECK(s.weights[0] == doctest::Approx(1.0));
}
