#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "imcflab/ambient.hpp"

namespace imcf {

// Thrown by parse_config with every violation collected, not just the first.
struct ConfigError : Error {
  explicit ConfigError(std::vector<std::string> violations);
  std::vector<std::string> violations;
};

// Which verification checks run_experiment evaluates. Tri-state: unset means
// "auto" (derived from the metric family and initial-data shape).
struct CheckToggles {
  std::optional<bool> round_oracle;  // exact round-flow + m_H == 0 band
  std::optional<bool> geroch;
  std::optional<bool> barrier;
  std::optional<bool> umbilicity;
  std::optional<bool> starshape;
  std::optional<bool> stampacchia;
  std::optional<bool> roundness;
  std::optional<bool> limit;
};

struct ExperimentConfig {
  // [metric]
  Family family = Family::Hyperbolic;
  double mass = 0.0;
  double q_amplitude = 0.0;
  double q_decay_rate = 3.0;
  std::vector<double> q_modes;

  // [grid]
  int n_theta = 64;
  int n_phi = 1;

  // [initial] u0 = sum_k u0_modes[k] P_k(cos theta); rho0 is shorthand for a
  // single constant mode
  std::vector<double> u0_modes;

  // [flow]
  double t_end = 4.0;
  double cfl = 0.2;
  double dt_max = 0.01;
  double h_floor = 1e-3;
  double cadence = 0.05;

  // [checks]
  std::optional<double> tol_geroch;  // default: 1e-6 * max(1e-3, max|m_H|)
  double tol_limit = 0.02;
  double tol_pair = 0.02;
  double eta = 0.05;
  double delta0 = 0.9;
  double barrier_slack = 0.01;
  double mh_zero_tol = 1e-6;
  double roundness_tol = 1e-2;
  CheckToggles checks;

  // [output]
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  bool quiet = false;

  AmbientMetric make_metric() const;
  bool round_initial() const;  // constant u0
};

ExperimentConfig parse_config(const std::string& text);
std::string serialize_config(const ExperimentConfig& cfg);

}  // namespace imcf
