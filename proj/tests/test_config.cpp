#include <doctest.h>

#include "nfsolv/config.hpp"

using namespace nfsolv;
using nlohmann::json;

TEST_CASE("parse_config fails closed on unknown keys at every level") {
  CHECK_THROWS_AS(parse_config(json{{"grd", json::object()}}), ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"grid", {{"z", json::object()}}}}),
                  ConfigError);
  CHECK_THROWS_AS(
      parse_config(json{{"grid", {{"x", {{"spacing", 0.1}}}}}}), ConfigError);
  CHECK_THROWS_AS(
      parse_config(json{{"potential", {{"params", {{"depth", 1.0}}}}}}),
      ConfigError);
  CHECK_THROWS_AS(
      parse_config(json{{"spectrum", {{"tune", {{"step", 0.1}}}}}}),
      ConfigError);
  CHECK_THROWS_AS(parse_config(json{{"solver", {{"aa", 1.0}}}}), ConfigError);
}

TEST_CASE("parse_config defaults and explicit values") {
  const RunConfig d = parse_config(json::object());
  CHECK(d.xgrid.dim == 3);
  CHECK(d.xgrid.points_per_axis == 32);
  CHECK(d.ygrid.dim == 1);
  CHECK(d.a == 1.0);
  CHECK(d.tol == 1e-8);
  CHECK(d.potential.family == PotentialFamily::zero);

  const RunConfig c = parse_config(json{
      {"grid", {{"x", {{"dim", 2}, {"extent", 6.0}, {"points_per_axis", 48}}}}},
      {"potential",
       {{"family", "gaussian"}, {"params", {{"beta", 0.5}, {"c", 2.0}}}}},
      {"solver", {{"a", 4.0}, {"k", {0.1, 0.2, 0.3}}}},
  });
  CHECK(c.xgrid.dim == 2);
  CHECK(c.xgrid.extent == 6.0);
  CHECK(c.potential.family == PotentialFamily::gaussian);
  CHECK(c.potential.beta == 0.5);
  CHECK(c.potential.c == 2.0);
  CHECK(c.a == 4.0);
  CHECK(c.k == std::array<double, 3>{0.1, 0.2, 0.3});

  CHECK_THROWS_AS(
      parse_config(json{{"potential", {{"family", "coulombish"}}}}),
      ConfigError);
}

TEST_CASE("apply_override parses dotted paths and JSON scalars") {
  json j = json::object();
  j = apply_override(j, "solver.a=2.5");
  j = apply_override(j, "grid.x.points_per_axis=64");
  j = apply_override(j, "potential.family=gaussian");
  j = apply_override(j, "spectrum.tune.enabled=true");
  CHECK(j["solver"]["a"] == 2.5);
  CHECK(j["grid"]["x"]["points_per_axis"] == 64);
  CHECK(j["potential"]["family"] == "gaussian");  // string fallback
  CHECK(j["spectrum"]["tune"]["enabled"] == true);

  CHECK_THROWS_AS(apply_override(json::object(), "solver.a"), ConfigError);

  const RunConfig c = parse_config(j);
  CHECK(c.a == 2.5);
  CHECK(c.tune);
}

TEST_CASE("config_echo round trips losslessly") {
  RunConfig c = parse_config(json::object());
  c.subcommand = "solve-h";
  c.potential.family = PotentialFamily::poschl_teller;
  c.potential.lambda = 2.0;
  c.potential.v_plus = 1.25;
  c.source.family = SourceSpec::Family::hermite;
  c.source_manufactured = true;
  c.a = 3.0;
  c.sigma = 0.4;
  c.n = 2;
  c.witness_sigmas = {0.2, 0.1};
  c.tune = true;
  c.tune_parameter = "beta";
  c.out_dir = "elsewhere";

  const RunConfig back = parse_config(config_echo(c));
  CHECK(config_echo(back) == config_echo(c));
  CHECK(back.potential.family == c.potential.family);
  CHECK(back.source_manufactured == c.source_manufactured);
  CHECK(back.witness_sigmas == c.witness_sigmas);
  CHECK(back.tune_parameter == "beta");
  CHECK(back.out_dir == "elsewhere");
}

TEST_CASE("load_config rejects a missing file") {
  CHECK_THROWS_AS(load_config("/no/such/config.json", {}), ConfigError);
}
