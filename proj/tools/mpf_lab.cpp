#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <iostream>
#include <string>
#include <vector>

#include "mpflab/errors.hpp"
#include "mpflab/experiments.hpp"

namespace {

enum Exit { kOk = 0, kInvalid = 2, kResource = 3, kSolver = 4 };

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mpf-lab: product formulas and multi-product formulas on small spin chains"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path, out_path;
  std::optional<std::uint64_t> seed;
  int threads = 1;
  std::vector<std::string> overrides;
  app.add_option("--config", config_path, "key = value configuration file");
  app.add_option("--seed", seed, "RNG seed (overrides the config)");
  app.add_option("--out", out_path, "CSV output path (default stdout)");
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--set", overrides, "config override key=value (repeatable)");
  for (const auto& name : mpflab::scenario_names()) app.add_subcommand(name, "run the " + name + " scenario");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalid;
  }

  try {
    mpflab::Config cfg = config_path.empty() ? mpflab::Config() : mpflab::Config::load(config_path);
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw mpflab::InvalidArgument("--set expects key=value, got '" + kv + "'");
      cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (seed) cfg.set("seed", std::to_string(*seed));
    const std::string scenario = app.get_subcommands().front()->get_name();
    const std::string csv = mpflab::run_scenario(scenario, cfg, threads);
    if (out_path.empty()) {
      std::cout << csv;
    } else {
      std::ofstream f(out_path, std::ios::binary);
      if (!f) throw mpflab::InvalidArgument("cannot write " + out_path);
      f << csv;
    }
    return kOk;
  } catch (const mpflab::ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const mpflab::SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kSolver;
  } catch (const mpflab::NumericalDegeneracy& e) {
    std::cerr << "numerical degeneracy: " << e.what() << "\n";
    return kSolver;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
