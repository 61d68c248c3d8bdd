#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "nfsolv/cache.hpp"
#include "nfsolv/grid.hpp"
#include "nfsolv/potential.hpp"
#include "nfsolv/scattering.hpp"

using namespace nfsolv;

namespace {
PotentialSpec gaussian_spec(double beta) {
  PotentialSpec V;
  V.family = PotentialFamily::gaussian;
  V.beta = beta;
  V.c = 1.0;
  return V;
}

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("nfsolv_cache_test_" + std::to_string(std::rand()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};
}  // namespace

TEST_CASE("scattering state sidecar round trip") {
  const TempDir tmp;
  const Grid g = build_box_grid(3, 6.0, 12);
  const PotentialSpec V = gaussian_spec(0.5);
  const Vec3 k{0.0, 0.0, 1.0};
  const ScatteringState s = scattering_state(k, V, g, 1e-8);

  const std::string path = state_cache_path(tmp.path.string(), V, g, k);
  save_state(path, s);

  ScatteringState back;
  REQUIRE(load_state(path, back));
  CHECK(back.iterations == s.iterations);
  CHECK(back.k[0] == s.k[0]);
  CHECK(back.k[2] == s.k[2]);
  CHECK(back.series_tail_bound == s.series_tail_bound);
  CHECK(back.sup_norm == s.sup_norm);
  CHECK(back.q_norm_bound == s.q_norm_bound);
  REQUIRE(back.values.size() == s.values.size());
  for (std::size_t i = 0; i < s.values.size(); ++i)
    CHECK(back.values[i] == s.values[i]);  // bit-for-bit

  ScatteringState miss;
  CHECK_FALSE(load_state((tmp.path / "absent.bin").string(), miss));
}

TEST_CASE("cache key separates potential, grid, and wave vector") {
  const TempDir tmp;
  const Grid g1 = build_box_grid(3, 6.0, 12);
  const Grid g2 = build_box_grid(3, 6.0, 16);
  const PotentialSpec v1 = gaussian_spec(0.5);
  const PotentialSpec v2 = gaussian_spec(0.6);
  const Vec3 ka{0.0, 0.0, 1.0};
  const Vec3 kb{0.0, 1.0, 0.0};

  const std::string base = state_cache_path(tmp.path.string(), v1, g1, ka);
  CHECK(base != state_cache_path(tmp.path.string(), v2, g1, ka));
  CHECK(base != state_cache_path(tmp.path.string(), v1, g2, ka));
  CHECK(base != state_cache_path(tmp.path.string(), v1, g1, kb));
  // deterministic
  CHECK(base == state_cache_path(tmp.path.string(), v1, g1, ka));
}

TEST_CASE("field dump round trip with shape header") {
  const TempDir tmp;
  Field f(24);
  for (std::size_t i = 0; i < f.size(); ++i)
    f[i] = cplx(0.25 * double(i), -1.5 + double(i) / 7.0);
  const std::vector<int> shape{4, 6};
  const std::string path = (tmp.path / "field.bin").string();
  save_field(path, f, shape);

  Field back;
  std::vector<int> bshape;
  REQUIRE(load_field(path, back, bshape));
  CHECK(bshape == shape);
  REQUIRE(back.size() == f.size());
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(back[i] == f[i]);

  CHECK_FALSE(load_field((tmp.path / "absent.bin").string(), back, bshape));
}
