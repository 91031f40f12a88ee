#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "coboundary/cli.hpp"

using namespace coboundary;

namespace {

constexpr int kUsage = 2;

int usage(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return kUsage;
}

// Reads the config file; flags given on the command line win.
void apply_config(const Json& j, CheckConfig& c, std::string& suite, std::string& out, bool& have_suite,
                  const CLI::App& app) {
  auto take = [&](const char* key, const char* flag, auto& dst) {
    if (j.contains(key) && app.count(flag) == 0) dst = j[key].get<std::decay_t<decltype(dst)>>();
  };
  take("check", "--check", c.check);
  take("n", "--n", c.n);
  take("max_degree", "--max-degree", c.max_degree);
  take("seed", "--seed", c.seed);
  take("samples", "--samples", c.samples);
  take("algebra", "--algebra", c.algebra);
  take("g0", "--g0", c.g0);
  take("out", "--out", out);
  if (j.contains("negative_control") && app.count("--no-negative-control") == 0)
    c.negative_control = j["negative_control"].get<bool>();
  if (j.contains("timing") && app.count("--timing") == 0) c.timing = j["timing"].get<bool>();
  if (j.contains("suite") && app.count("--suite") == 0) {
    have_suite = true;
    if (j["suite"].is_array()) {
      suite.clear();
      for (const auto& s : j["suite"]) suite += (suite.empty() ? "" : ",") + s.get<std::string>();
    } else {
      suite = j["suite"].get<std::string>();
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for coboundary Poisson Lie groups and Hopf algebras"};
  CheckConfig cfg;
  std::string suite, out, config_path;
  bool list = false, no_negative = false;
  app.add_option("--check", cfg.check, "check to run (see --list)");
  app.add_option("--n", cfg.n, "matrix size");
  app.add_option("--max-degree", cfg.max_degree, "degree bound for ideal membership");
  app.add_option("--seed", cfg.seed, "sample seed (default: $COBOUNDARY_SEED or 7)");
  app.add_option("--samples", cfg.samples, "number of sample points");
  app.add_option("--algebra", cfg.algebra, "Hopf algebra: catalog name or .json file");
  app.add_option("--g0", cfg.g0, "translation point: epsilon or identity");
  app.add_option("--out", out, "write the JSON report here instead of stdout");
  app.add_option("--suite", suite, "comma list of checks, 'all', or name:key=value overrides");
  app.add_option("--config", config_path, "JSON config; flags override it");
  app.add_flag("--no-negative-control", no_negative, "skip the negative control in gauge-quantum");
  app.add_flag("--timing", cfg.timing, "include wall-clock seconds (breaks byte-identical reports)");
  app.add_flag("--list", list, "list available checks");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  if (list) {
    std::cout << registry_listing();
    return 0;
  }

  bool have_suite = app.count("--suite") > 0;
  std::string seed_source = app.count("--seed") ? "flag" : "default";
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) return usage("cannot read config " + config_path);
    try {
      const Json j = Json::parse(in);
      apply_config(j, cfg, suite, out, have_suite, app);
      if (j.contains("seed") && app.count("--seed") == 0) seed_source = "config";
    } catch (const Json::exception& e) {
      return usage(std::string("bad config: ") + e.what());
    }
  }
  if (seed_source == "default") {
    if (const char* env = std::getenv("COBOUNDARY_SEED")) {
      try {
        cfg.seed = std::stoull(env);
        seed_source = "env COBOUNDARY_SEED";
      } catch (const std::exception&) {
        return usage(std::string("COBOUNDARY_SEED is not a number: ") + env);
      }
    }
  }
  cfg.negative_control = cfg.negative_control && !no_negative;
  if (have_suite == !cfg.check.empty()) return usage("give exactly one of --check or --suite\n" + registry_listing());

  const Json meta{{"seed", cfg.seed}, {"seed_source", seed_source}};
  SuiteResult res;
  try {
    if (have_suite) {
      const auto configs = expand_suite(suite, cfg);
      for (const auto& c : configs) {
        bool known = false;
        for (const auto& e : registry()) known = known || e.name == c.check;
        if (!known) return usage("unknown check '" + c.check + "'\n" + registry_listing());
      }
      res = run_suite(configs, meta);
    } else {
      res = aggregate({cfg}, {run_check(cfg)}, meta);
    }
  } catch (const UsageError& e) {
    return usage(e.what());
  }

  const std::string text = res.document.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    std::cerr << res.summary;
  } else {
    std::ofstream f(out, std::ios::binary);
    if (!f) return usage("cannot write " + out);
    f << text;
    std::cout << res.summary;
  }
  return res.exit_code;
}
