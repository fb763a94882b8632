#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "imcflab/config.hpp"

using namespace imcf;

namespace {

bool mentions(const ConfigError& e, const std::string& needle) {
  for (const auto& v : e.violations)
    if (v.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("minimal valid document fills documented defaults") {
  const auto cfg = parse_config(
      "[metric]\nfamily = hyperbolic\n[initial]\nrho0 = 3\n"
      "[flow]\nt_end = 4\n");
  CHECK(cfg.family == Family::Hyperbolic);
  CHECK(cfg.u0_modes == std::vector<double>{3.0});
  CHECK(cfg.t_end == 4.0);
  CHECK(cfg.cfl == 0.2);
  CHECK(cfg.dt_max == 0.01);
  CHECK(cfg.h_floor == 1e-3);
  CHECK(cfg.cadence == 0.05);
  CHECK(cfg.n_theta == 64);
  CHECK(cfg.n_phi == 1);
  CHECK(cfg.round_initial());
}

TEST_CASE("validation names the key and the admissible range") {
  try {
    parse_config("[metric]\nfamily = hyperbolic\n[flow]\ncfl = -1\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(mentions(e, "flow.cfl"));
    CHECK(mentions(e, "(0, 1e6]"));
  }
}

TEST_CASE("ads_schwarzschild without mass is rejected") {
  try {
    parse_config("[metric]\nfamily = ads_schwarzschild\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(mentions(e, "mass required"));
  }
}

TEST_CASE("all violations are collected, not just the first") {
  try {
    parse_config(
        "[metric]\nfamily = nosuch\n[grid]\nn_theta = 4\n"
        "[flow]\ncfl = 0\nbogus = 1\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.violations.size() >= 4);
    CHECK(mentions(e, "unknown family"));
    CHECK(mentions(e, "grid.n_theta"));
    CHECK(mentions(e, "flow.cfl"));
    CHECK(mentions(e, "unknown key: flow.bogus"));
  }
}

TEST_CASE("unknown keys rejected") {
  CHECK_THROWS_AS(
      parse_config("[metric]\nfamily = hyperbolic\nwhat = 1\n"),
      ConfigError);
}

TEST_CASE("perturbed family validation") {
  // decay rate must be >= 5 when mass > 0
  try {
    parse_config(
        "[metric]\nfamily = perturbed\nmass = 2\nq_amplitude = 0.1\n"
        "q_decay_rate = 3\nq_modes = 1\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(mentions(e, "q_decay_rate"));
  }
  const auto ok = parse_config(
      "[metric]\nfamily = perturbed\nmass = 2\nq_amplitude = 0.1\n"
      "q_decay_rate = 5\nq_modes = 0.5, 1.0\n");
  CHECK(ok.q_modes == std::vector<double>{0.5, 1.0});
  const AmbientMetric m = ok.make_metric();
  CHECK(m.family() == Family::Perturbed);
}

TEST_CASE("initial data: rho0 and u0_modes are exclusive") {
  CHECK_THROWS_AS(parse_config("[metric]\nfamily = hyperbolic\n"
                               "[initial]\nrho0 = 3\nu0_modes = 3, 0.4\n"),
                  ConfigError);
  const auto cfg = parse_config(
      "[metric]\nfamily = hyperbolic\n[initial]\nu0_modes = 3, 0.4\n");
  CHECK(cfg.u0_modes == std::vector<double>{3.0, 0.4});
  CHECK(!cfg.round_initial());
}

TEST_CASE("config round-trips through serialize_config") {
  auto cfg = parse_config(
      "[metric]\nfamily = ads_schwarzschild\nmass = 2\n"
      "[grid]\nn_theta = 48\n[initial]\nu0_modes = 3, 0.4\n"
      "[flow]\nt_end = 10\ncadence = 0.02\n"
      "[checks]\ntol_geroch = 1e-8\n[output]\ndir = out/x\nseed = 42\n");
  const auto cfg2 = parse_config(serialize_config(cfg));
  CHECK(cfg2.family == cfg.family);
  CHECK(cfg2.mass == cfg.mass);
  CHECK(cfg2.n_theta == cfg.n_theta);
  CHECK(cfg2.u0_modes == cfg.u0_modes);
  CHECK(cfg2.t_end == cfg.t_end);
  CHECK(cfg2.cadence == cfg.cadence);
  CHECK(cfg2.tol_geroch == cfg.tol_geroch);
  CHECK(cfg2.out_dir == cfg.out_dir);
  CHECK(cfg2.seed == cfg.seed);
}

TEST_CASE("check toggles parse") {
  const auto cfg = parse_config(
      "[metric]\nfamily = hyperbolic\n[checks]\ngeroch = false\n"
      "stampacchia = true\n");
  REQUIRE(cfg.checks.geroch.has_value());
  CHECK(!*cfg.checks.geroch);
  REQUIRE(cfg.checks.stampacchia.has_value());
  CHECK(*cfg.checks.stampacchia);
  CHECK(!cfg.checks.limit.has_value());
}
