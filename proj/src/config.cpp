#include "nfsolv/config.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace nfsolv {

using nlohmann::json;

const char* potential_family_name(PotentialFamily f) {
  switch (f) {
    case PotentialFamily::zero: return "zero";
    case PotentialFamily::gaussian: return "gaussian";
    case PotentialFamily::poschl_teller: return "poschl_teller";
    case PotentialFamily::rational_decay: return "rational_decay";
    case PotentialFamily::gaussian_well: return "gaussian_well";
  }
  return "unknown";
}

PotentialFamily potential_family_from_name(const std::string& s) {
  if (s == "zero") return PotentialFamily::zero;
  if (s == "gaussian") return PotentialFamily::gaussian;
  if (s == "poschl_teller") return PotentialFamily::poschl_teller;
  if (s == "rational_decay") return PotentialFamily::rational_decay;
  if (s == "gaussian_well") return PotentialFamily::gaussian_well;
  throw ConfigError("unknown potential family: " + s);
}

const char* source_family_name(SourceSpec::Family f) {
  switch (f) {
    case SourceSpec::Family::zero: return "zero";
    case SourceSpec::Family::gaussian: return "gaussian";
    case SourceSpec::Family::x1_gaussian: return "x1_gaussian";
    case SourceSpec::Family::hermite: return "hermite";
    case SourceSpec::Family::ball: return "ball";
  }
  return "unknown";
}

SourceSpec::Family source_family_from_name(const std::string& s) {
  if (s == "zero") return SourceSpec::Family::zero;
  if (s == "gaussian") return SourceSpec::Family::gaussian;
  if (s == "x1_gaussian") return SourceSpec::Family::x1_gaussian;
  if (s == "hermite") return SourceSpec::Family::hermite;
  if (s == "ball") return SourceSpec::Family::ball;
  throw ConfigError("unknown source family: " + s);
}

namespace {

void require_keys(const json& j, const std::string& where,
                  const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError("config: " + where + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError("config: unknown key '" + where + "." + it.key() + "'");
}

template <typename T>
void get_to(const json& j, const char* key, T& dst) {
  if (j.contains(key)) j.at(key).get_to(dst);
}

GridBlock parse_grid_block(const json& j, const std::string& where,
                           GridBlock def) {
  require_keys(j, where, {"dim", "extent", "points_per_axis"});
  get_to(j, "dim", def.dim);
  get_to(j, "extent", def.extent);
  get_to(j, "points_per_axis", def.points_per_axis);
  return def;
}

}  // namespace

RunConfig parse_config(const json& j) {
  RunConfig c;
  require_keys(j, "", {"grid", "potential", "source", "solver", "witness",
                       "spectrum", "constants", "output"});

  if (j.contains("grid")) {
    require_keys(j.at("grid"), "grid", {"x", "y"});
    if (j.at("grid").contains("x"))
      c.xgrid = parse_grid_block(j.at("grid").at("x"), "grid.x", c.xgrid);
    if (j.at("grid").contains("y"))
      c.ygrid = parse_grid_block(j.at("grid").at("y"), "grid.y", c.ygrid);
  }
  if (j.contains("potential")) {
    const json& p = j.at("potential");
    require_keys(p, "potential", {"family", "params"});
    if (p.contains("family"))
      c.potential.family = potential_family_from_name(p.at("family"));
    if (p.contains("params")) {
      require_keys(p.at("params"), "potential.params",
                   {"beta", "c", "lambda", "v_plus", "q"});
      get_to(p.at("params"), "beta", c.potential.beta);
      get_to(p.at("params"), "c", c.potential.c);
      get_to(p.at("params"), "lambda", c.potential.lambda);
      get_to(p.at("params"), "v_plus", c.potential.v_plus);
      get_to(p.at("params"), "q", c.potential.q);
    }
  }
  if (j.contains("source")) {
    const json& s = j.at("source");
    require_keys(s, "source", {"family", "params", "manufactured"});
    if (s.contains("family"))
      c.source.family = source_family_from_name(s.at("family"));
    get_to(s, "manufactured", c.source_manufactured);
    if (s.contains("params")) {
      require_keys(s.at("params"), "source.params",
                   {"amplitude", "c", "radius"});
      get_to(s.at("params"), "amplitude", c.source.amplitude);
      get_to(s.at("params"), "c", c.source.c);
      get_to(s.at("params"), "radius", c.source.radius);
    }
  }
  if (j.contains("solver")) {
    const json& s = j.at("solver");
    require_keys(s, "solver",
                 {"a", "sigma", "delta", "alpha", "n", "tol", "threshold",
                  "sphere_resolution", "max_iter", "k", "mode_index"});
    get_to(s, "a", c.a);
    get_to(s, "sigma", c.sigma);
    get_to(s, "delta", c.delta);
    get_to(s, "alpha", c.alpha);
    get_to(s, "n", c.n);
    get_to(s, "tol", c.tol);
    get_to(s, "threshold", c.threshold);
    get_to(s, "sphere_resolution", c.sphere_resolution);
    get_to(s, "max_iter", c.max_iter);
    get_to(s, "k", c.k);
    get_to(s, "mode_index", c.mode_index);
  }
  if (j.contains("witness")) {
    const json& w = j.at("witness");
    require_keys(w, "witness",
                 {"sigmas", "sigma0_factor", "radial_nodes", "sphere_resolution"});
    get_to(w, "sigmas", c.witness_sigmas);
    get_to(w, "sigma0_factor", c.witness_sigma0_factor);
    get_to(w, "radial_nodes", c.witness_radial_nodes);
    get_to(w, "sphere_resolution", c.witness_sphere_resolution);
  }
  if (j.contains("spectrum")) {
    const json& s = j.at("spectrum");
    require_keys(s, "spectrum", {"v_plus", "zero_tol", "tune"});
    get_to(s, "v_plus", c.v_plus);
    get_to(s, "zero_tol", c.zero_tol);
    if (s.contains("tune")) {
      require_keys(s.at("tune"), "spectrum.tune",
                   {"enabled", "target_index", "parameter", "lo", "hi"});
      get_to(s.at("tune"), "enabled", c.tune);
      get_to(s.at("tune"), "target_index", c.tune_target_index);
      get_to(s.at("tune"), "parameter", c.tune_parameter);
      get_to(s.at("tune"), "lo", c.tune_lo);
      get_to(s.at("tune"), "hi", c.tune_hi);
    }
  }
  if (j.contains("constants")) {
    require_keys(j.at("constants"), "constants", {"c_hls"});
    get_to(j.at("constants"), "c_hls", c.c_hls);
  }
  if (j.contains("output")) {
    require_keys(j.at("output"), "output", {"out_dir", "cache_dir"});
    get_to(j.at("output"), "out_dir", c.out_dir);
    get_to(j.at("output"), "cache_dir", c.cache_dir);
  }
  return c;
}

json apply_override(json j, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override must look like path.to.key=value: " + assignment);
  const std::string path = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  json value;
  try {
    value = json::parse(raw);
  } catch (const json::parse_error&) {
    value = raw;  // plain string
  }
  json* node = &j;
  std::istringstream is(path);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(is, part, '.')) parts.push_back(part);
  if (parts.empty()) throw ConfigError("empty override path");
  for (std::size_t i = 0; i + 1 < parts.size(); ++i)
    node = &((*node)[parts[i]]);
  (*node)[parts.back()] = value;
  return j;
}

RunConfig load_config(const std::string& path,
                      const std::vector<std::string>& overrides) {
  json j = json::object();
  if (!path.empty()) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path);
    try {
      is >> j;
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("config parse error: ") + e.what());
    }
  }
  for (const std::string& o : overrides) j = apply_override(std::move(j), o);
  return parse_config(j);
}

json config_echo(const RunConfig& c) {
  json j;
  j["grid"]["x"] = {{"dim", c.xgrid.dim},
                    {"extent", c.xgrid.extent},
                    {"points_per_axis", c.xgrid.points_per_axis}};
  j["grid"]["y"] = {{"dim", c.ygrid.dim},
                    {"extent", c.ygrid.extent},
                    {"points_per_axis", c.ygrid.points_per_axis}};
  j["potential"] = {{"family", potential_family_name(c.potential.family)},
                    {"params",
                     {{"beta", c.potential.beta},
                      {"c", c.potential.c},
                      {"lambda", c.potential.lambda},
                      {"v_plus", c.potential.v_plus},
                      {"q", c.potential.q}}}};
  j["source"] = {{"family", source_family_name(c.source.family)},
                 {"manufactured", c.source_manufactured},
                 {"params",
                  {{"amplitude", c.source.amplitude},
                   {"c", c.source.c},
                   {"radius", c.source.radius}}}};
  j["solver"] = {{"a", c.a},
                 {"sigma", c.sigma},
                 {"delta", c.delta},
                 {"alpha", c.alpha},
                 {"n", c.n},
                 {"tol", c.tol},
                 {"threshold", c.threshold},
                 {"sphere_resolution", c.sphere_resolution},
                 {"max_iter", c.max_iter},
                 {"k", c.k},
                 {"mode_index", c.mode_index}};
  j["witness"] = {{"sigmas", c.witness_sigmas},
                  {"sigma0_factor", c.witness_sigma0_factor},
                  {"radial_nodes", c.witness_radial_nodes},
                  {"sphere_resolution", c.witness_sphere_resolution}};
  j["spectrum"] = {{"v_plus", c.v_plus},
                   {"zero_tol", c.zero_tol},
                   {"tune",
                    {{"enabled", c.tune},
                     {"target_index", c.tune_target_index},
                     {"parameter", c.tune_parameter},
                     {"lo", c.tune_lo},
                     {"hi", c.tune_hi}}}};
  j["constants"] = {{"c_hls", c.c_hls}};
  j["output"] = {{"out_dir", c.out_dir}, {"cache_dir", c.cache_dir}};
  return j;
}

}  // namespace nfsolv
