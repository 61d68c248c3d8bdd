#include <doctest.h>

#include <cstdlib>
#include <filesystem>

#include "nfsolv/config.hpp"
#include "nfsolv/run.hpp"

using namespace nfsolv;
using nlohmann::json;

namespace {
struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("nfsolv_run_test_" + std::to_string(std::rand()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};
}  // namespace

TEST_CASE("check-potential run: gaussian certificate passes") {
  const TempDir tmp;
  RunConfig c = parse_config(json{
      {"potential", {{"family", "gaussian"}, {"params", {{"beta", 1.0}}}}}});
  c.subcommand = "check-potential";
  c.out_dir = (tmp.path / "out").string();

  const RunReport r = run(c);
  CHECK(r.exit_code == 0);
  CHECK(r.report.at("assumption").at("passed") == true);
  CHECK(double(r.report.at("assumption").at("smallness_value")) ==
        doctest::Approx(0.572).epsilon(2e-3));
  CHECK(std::filesystem::exists(c.out_dir + "/report.json"));

  // config echo in the report parses back to the same effective config
  const RunConfig back = parse_config(r.report.at("config"));
  CHECK(config_echo(back) == r.report.at("config"));
}

TEST_CASE("solve-h run: gaussian source at a = 1 fails the condition") {
  const TempDir tmp;
  RunConfig c = parse_config(json{
      {"source", {{"family", "gaussian"}}},
      {"solver", {{"a", 1.0}, {"sphere_resolution", 12}}}});
  c.subcommand = "solve-h";
  c.out_dir = (tmp.path / "out").string();

  const RunReport r = run(c);
  CHECK(r.exit_code == 2);
  CHECK(r.report.at("solvability").at("verdict") == "not_solvable");
  CHECK(double(r.report.at("solvability").at("max_abs")) ==
        doctest::Approx(0.2754).epsilon(4e-3));
  CHECK_FALSE(r.sphere_magnitude.empty());
  CHECK(r.sphere_magnitude.size() == r.sphere_angle_theta.size());

  emit_plot_data(r, "sphere", c.out_dir);
  CHECK(std::filesystem::exists(c.out_dir + "/sphere_restriction.csv"));

  // stage data for other plots was never produced
  CHECK_THROWS_AS(emit_plot_data(r, "witness", c.out_dir), Error);
}

TEST_CASE("solve-h run: manufactured source is solvable") {
  const TempDir tmp;
  RunConfig c = parse_config(json{
      {"source", {{"manufactured", true}}},
      {"solver", {{"a", 1.0}, {"sphere_resolution", 12}}}});
  c.subcommand = "solve-h";
  c.out_dir = (tmp.path / "out").string();

  const RunReport r = run(c);
  CHECK(r.exit_code == 0);
  CHECK(r.report.at("solvability").at("verdict") == "solvable");
  CHECK(r.report.at("solution").contains("residual_l2"));
  CHECK(std::filesystem::exists(c.out_dir + "/solution.csv"));
}

TEST_CASE("witness run produces the sigma ladder") {
  const TempDir tmp;
  RunConfig c = parse_config(json{
      {"grid", {{"x", {{"points_per_axis", 24}}}}},
      {"source", {{"family", "gaussian"}}},
      {"witness", {{"radial_nodes", 32}, {"sphere_resolution", 6}}}});
  c.subcommand = "witness";
  c.out_dir = (tmp.path / "out").string();

  const RunReport r = run(c);
  CHECK(r.exit_code == 0);
  REQUIRE(r.witness_norms.size() == r.witness_sigmas.size());
  for (std::size_t i = 1; i < r.witness_norms.size(); ++i)
    CHECK(r.witness_norms[i] > r.witness_norms[i - 1]);
  emit_plot_data(r, "witness", c.out_dir);
  CHECK(std::filesystem::exists(c.out_dir + "/witness.csv"));
}

TEST_CASE("unknown subcommand is a config error") {
  RunConfig c = parse_config(json::object());
  c.subcommand = "frobnicate";
  CHECK_THROWS_AS(run(c), ConfigError);
}
