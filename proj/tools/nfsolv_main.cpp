#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nfsolv/run.hpp"

namespace {

const char* const subcommands[] = {"check-potential", "scattering-state",
                                   "solve-h",         "spectrum",
                                   "solve-separable", "witness"};

// "--solver.a=1.0" -> "solver.a=1.0"
std::string strip_dashes(const std::string& s) {
  std::size_t i = 0;
  while (i < s.size() && s[i] == '-') ++i;
  return s.substr(i);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nfsolv: solvability toolkit for non-Fredholm Schrodinger "
               "operators"};
  app.allow_extras();
  app.require_subcommand(1);

  std::string config_path, out_dir, cache_dir;
  int threads = 1;
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--out", out_dir, "output directory (default: out)");
  app.add_option("--cache", cache_dir, "scattering-state cache directory");
  app.add_option("--threads", threads, "worker threads (advisory)");

  for (const char* name : subcommands) {
    CLI::App* sc = app.add_subcommand(name);
    sc->allow_extras();
    sc->fallthrough();
  }

  CLI11_PARSE(app, argc, argv);

  try {
    std::vector<std::string> overrides;
    for (const std::string& extra : app.remaining(true)) {
      const std::string o = strip_dashes(extra);
      if (o.find('=') == std::string::npos)
        throw nfsolv::ConfigError("unrecognized argument: " + extra);
      overrides.push_back(o);
    }

    nfsolv::RunConfig cfg = nfsolv::load_config(config_path, overrides);
    cfg.subcommand = app.get_subcommands().front()->get_name();
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!cache_dir.empty()) cfg.cache_dir = cache_dir;

    const nfsolv::RunReport rr = nfsolv::run(cfg);
    std::printf("%s: %s (report: %s/report.json)\n", cfg.subcommand.c_str(),
                rr.report.value("verdict", std::string("done")).c_str(),
                cfg.out_dir.c_str());
    return rr.exit_code;
  } catch (const nfsolv::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
  } catch (const nfsolv::BudgetError& e) {
    std::fprintf(stderr, "budget error: %s\n", e.what());
  } catch (const nfsolv::ContractionError& e) {
    std::fprintf(stderr, "contraction certificate failed: %s\n", e.what());
  } catch (const nfsolv::ConvergenceError& e) {
    std::fprintf(stderr, "convergence failure: %s\n", e.what());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
  }
  return 1;
}
