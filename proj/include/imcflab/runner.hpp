#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "imcflab/config.hpp"
#include "imcflab/flow.hpp"

namespace imcf {

struct RunResult {
  int exit_code = 0;  // 0 all checks pass, 1 check failure, 2 flow halted
  FlowTrace trace;
  nlohmann::json report;
  std::string out_dir;
};

// Runs a flow from the config, streaming trace.csv rows as they finalize,
// then evaluates the enabled verification checks and writes report.json,
// run.log and config.resolved into the output directory.
RunResult run_experiment(const ExperimentConfig& cfg);

// Re-runs verification on a stored trace (run_dir must contain trace.csv and
// config.resolved).
RunResult verify_run_dir(const std::string& run_dir);

// Builds the initial graph u0 = sum_k modes[k] P_k(cos theta).
std::vector<double> initial_graph(const SphereGrid& grid,
                                  const std::vector<double>& modes);

struct SweepCell {
  std::string name;
  ExperimentConfig cfg;
  int exit_code = -1;
  double final_hawking = 0;
  double extrapolated_limit = 0;
  bool pass = false;
};

// Cartesian sweep over a parameter grid file with lines like
//   mass = 1, 2, 4
//   rho0 = 3
//   eccentricity = 0, 0.4        (coefficient of P_1 in u0)
//   q_amplitude = 0.01
// Cells run concurrently, each in its own subdirectory of out_root.
std::vector<SweepCell> sweep(const ExperimentConfig& base,
                             const std::string& grid_text,
                             const std::string& out_root);

}  // namespace imcf
