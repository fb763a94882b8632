#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "imcflab/flow.hpp"
#include "imcflab/runner.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw imcf::Error("cannot open: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

imcf::ExperimentConfig load_config(const std::string& path,
                                   const std::string& out_override,
                                   std::uint64_t seed_override, bool has_seed,
                                   bool quiet) {
  imcf::ExperimentConfig cfg = imcf::parse_config(slurp(path));
  if (!out_override.empty()) cfg.out_dir = out_override;
  if (has_seed) cfg.seed = seed_override;
  if (quiet) cfg.quiet = true;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"imcf: inverse mean curvature flow laboratory"};
  app.require_subcommand(1);

  std::string config_path, grid_path, verify_path, out_dir;
  std::uint64_t seed = 0;
  bool quiet = false;

  auto* run = app.add_subcommand("run", "run one experiment from a config");
  run->add_option("config", config_path, "config file")->required();
  run->add_option("--out", out_dir, "output directory override");
  auto* run_seed = run->add_option("--seed", seed, "rng seed override");
  run->add_flag("--quiet", quiet, "suppress progress output");

  auto* sw = app.add_subcommand("sweep", "run a parameter sweep");
  sw->add_option("config", config_path, "template config file")->required();
  sw->add_option("grid", grid_path, "parameter grid file")->required();
  sw->add_option("--out", out_dir, "output root directory");
  auto* sw_seed = sw->add_option("--seed", seed, "rng seed override");
  sw->add_flag("--quiet", quiet, "suppress progress output");

  auto* ver = app.add_subcommand("verify",
                                 "re-run verification on a stored trace");
  ver->add_option("run_dir", verify_path,
                  "run directory (or its trace.csv)")->required();

  auto* orc = app.add_subcommand("oracle",
                                 "print closed-form oracle values");
  std::string family = "hyperbolic";
  double mass = 0, rho = 3, rho0 = 3, t = -1;
  orc->add_option("--family", family, "hyperbolic | ads_schwarzschild");
  orc->add_option("--m", mass, "mass parameter");
  orc->add_option("--rho", rho, "coordinate-sphere radius");
  orc->add_option("--rho0", rho0, "initial radius for flow/barrier values");
  orc->add_option("--t", t, "flow time (enables barrier/flow rows)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const auto cfg = load_config(config_path, out_dir, seed,
                                   run_seed->count() > 0, quiet);
      const imcf::RunResult r = imcf::run_experiment(cfg);
      if (!cfg.quiet) {
        std::cout << "wrote " << r.out_dir << " (" << r.trace.rows.size()
                  << " samples)\n";
        for (const auto& c : r.report["checks"])
          std::cout << "  " << c["name"].get<std::string>() << ": "
                    << (c["pass"].get<bool>() ? "pass" : "FAIL") << "\n";
      }
      return r.exit_code;
    }
    if (*sw) {
      const auto cfg = load_config(config_path, "", seed,
                                   sw_seed->count() > 0, quiet);
      const std::string root = out_dir.empty() ? cfg.out_dir : out_dir;
      const auto cells = imcf::sweep(cfg, slurp(grid_path), root);
      int bad = 0;
      for (const auto& c : cells) {
        if (!quiet)
          std::cout << c.name << ": exit " << c.exit_code << "\n";
        if (c.exit_code != 0) ++bad;
      }
      std::cout << cells.size() - bad << "/" << cells.size()
                << " cells passed\n";
      return bad == 0 ? 0 : 1;
    }
    if (*ver) {
      const imcf::RunResult r = imcf::verify_run_dir(verify_path);
      std::cout << r.report.dump(2) << "\n";
      return r.exit_code;
    }
    if (*orc) {
      imcf::AmbientMetric metric =
          family == "ads_schwarzschild"
              ? imcf::AmbientMetric::ads_schwarzschild(mass)
              : imcf::AmbientMetric::hyperbolic();
      std::printf("sphere_H(rho=%.17g) = %.17g\n", rho,
                  metric.coordinate_sphere_mean_curvature(rho));
      std::printf("sphere_hawking_mass(rho=%.17g) = %.17g\n", rho,
                  metric.sphere_hawking_mass(rho));
      const double W = metric.warp(rho, imcf::kPi / 2).W;
      std::printf("sphere_area(rho=%.17g) = %.17g\n", rho, 4 * imcf::kPi * W);
      if (t >= 0) {
        std::printf("exact_flow_radius(rho0=%.17g, t=%.17g) = %.17g\n", rho0,
                    t, imcf::barrier_radius(rho0, t, 0));
        std::printf("barrier_plus(rho0=%.17g, t=%.17g) = %.17g\n", rho0, t,
                    imcf::barrier_radius(rho0, t, +1));
        std::printf("barrier_minus(rho0=%.17g, t=%.17g) = %.17g\n", rho0, t,
                    imcf::barrier_radius(rho0, t, -1));
      }
      return 0;
    }
  } catch (const imcf::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 64;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 70;
  }
  return 0;
}
