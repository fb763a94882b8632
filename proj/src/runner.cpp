#include "imcflab/runner.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "imcflab/trace_io.hpp"
#include "imcflab/verify.hpp"

namespace fs = std::filesystem;

namespace imcf {

namespace {

struct LineFile {
  std::FILE* f = nullptr;
  explicit LineFile(const std::string& path) {
    f = std::fopen(path.c_str(), "w");
    if (!f) throw Error("cannot open for writing: " + path);
  }
  ~LineFile() {
    if (f) std::fclose(f);
  }
  // one write + flush per line so a halt never leaves a torn row
  void line(const std::string& s) {
    std::string buf = s + "\n";
    std::fwrite(buf.data(), 1, buf.size(), f);
    std::fflush(f);
  }
};

nlohmann::json run_checks(const ExperimentConfig& cfg, const FlowTrace& trace,
                          const AmbientMetric& metric, bool& all_pass) {
  nlohmann::json checks = nlohmann::json::array();
  const bool round = cfg.round_initial();
  auto enabled = [&](const std::optional<bool>& toggle, bool auto_default) {
    return toggle.value_or(auto_default);
  };
  auto add = [&](const char* name, bool pass, nlohmann::json vals) {
    vals["name"] = name;
    vals["pass"] = pass;
    checks.push_back(vals);
    all_pass = all_pass && pass;
  };

  // exact round-flow oracle + vanishing Hawking mass (exact hyperbolic only)
  if (enabled(cfg.checks.round_oracle,
              cfg.family == Family::Hyperbolic && round)) {
    const double rho0 = cfg.u0_modes.empty() ? 0.0 : cfg.u0_modes[0];
    double max_rel_u = 0, max_rel_area = 0, max_mh = 0;
    const double area0 = trace.rows.front().area;
    for (const TraceRow& r : trace.rows) {
      const double exact = std::asinh(std::sinh(rho0) * std::exp(r.t / 2));
      max_rel_u = std::max(
          max_rel_u, std::max(std::abs(r.r_inner - exact),
                              std::abs(r.r_outer - exact)) / exact);
      max_rel_area = std::max(
          max_rel_area, std::abs(r.area - area0 * std::exp(r.t)) /
                            (area0 * std::exp(r.t)));
      max_mh = std::max(max_mh, std::abs(r.hawking));
    }
    add("round_oracle", max_rel_u <= 1e-6 && max_rel_area <= 1e-5,
        {{"max_rel_u", max_rel_u}, {"max_rel_area", max_rel_area}});
    add("hawking_zero", max_mh <= cfg.mh_zero_tol, {{"max_abs_mh", max_mh}});
  }

  if (enabled(cfg.checks.geroch, true) && trace.rows.size() >= 3) {
    const auto rep = geroch_report(trace, cfg.tol_geroch);
    add("geroch", rep.pass,
        {{"min_defect", rep.min_defect}, {"tol", rep.tol}});
  }

  if (enabled(cfg.checks.barrier, trace.rows.front().r_inner >= 2.0)) {
    bool ok = true;
    double worst = 0;
    for (const TraceRow& r : trace.rows) {
      const double lo = r.rho_plus - cfg.barrier_slack;
      const double hi = r.rho_minus + cfg.barrier_slack;
      worst = std::max(worst, std::max(lo - r.r_inner, r.r_outer - hi));
      ok = ok && r.r_inner >= lo && r.r_outer <= hi;
    }
    add("barrier_pinching", ok, {{"worst_violation", worst}});
  }

  if (enabled(cfg.checks.umbilicity, !round)) {
    const auto rep = umbilicity_decay_report(trace);
    add("umbilicity_decay", rep.pass,
        {{"sup_product", rep.sup_product},
         {"mid_max", rep.mid_max},
         {"last_quarter_max", rep.last_quarter_max},
         {"fitted_slope", rep.fitted_slope}});
  }

  if (enabled(cfg.checks.starshape, true)) {
    const auto rep = starshape_report(trace, cfg.eta);
    add("starshape", rep.reached,
        {{"eta", cfg.eta}, {"T", rep.reached ? rep.T : -1.0}});
  }

  if (enabled(cfg.checks.stampacchia, trace.rows.size() >= 3)) {
    try {
      const auto rep =
          stampacchia_report(trace, trace.rows.front().t, cfg.delta0);
      add("stampacchia", rep.pass,
          {{"c", rep.c}, {"delta0", cfg.delta0},
           {"precondition_ok", rep.precondition_ok}});
    } catch (const VerifyError& e) {
      add("stampacchia", false, {{"error", e.what()}});
    }
  }

  if (enabled(cfg.checks.roundness, trace.rows.back().r_outer >= 7.0)) {
    const auto rep = asymptotic_roundness_report(trace);
    add("roundness",
        rep.sup_H_minus_2 <= cfg.roundness_tol &&
            rep.sup_tracefree <= cfg.roundness_tol,
        {{"sup_H_minus_2", rep.sup_H_minus_2},
         {"sup_tracefree", rep.sup_tracefree},
         {"tol", cfg.roundness_tol}});
  }

  if (enabled(cfg.checks.limit,
              metric.mass() > 0 && trace.rows.back().r_outer >= 7.0)) {
    try {
      const auto rep = limit_report(trace, metric, cfg.tol_limit, cfg.tol_pair);
      nlohmann::json vals = {{"extrapolated_mh", rep.extrapolated_mh},
                             {"extrapolated_prediction",
                              rep.extrapolated_prediction},
                             {"relative_gap", rep.relative_gap},
                             {"min_holder_slack", rep.min_holder_slack},
                             {"sup_grad_bound", rep.sup_grad_bound},
                             {"final_radius_spread", rep.final_radius_spread},
                             {"gap_first_quarter", rep.gap_first_quarter},
                             {"gap_last_quarter", rep.gap_last_quarter}};
      bool pass = rep.pass;
      if (round) {
        // round data: the limit itself is pinned at m/2
        const double m2 = metric.mass() / 2;
        pass = pass && std::abs(rep.extrapolated_mh - m2) <= 0.01 * m2;
        vals["round_limit_rel_err"] =
            std::abs(rep.extrapolated_mh - m2) / m2;
      }
      add("theorem_1_2", pass, vals);
    } catch (const VerifyError& e) {
      add("theorem_1_2", false, {{"error", e.what()}});
    }
  }
  return checks;
}

}  // namespace

std::vector<double> initial_graph(const SphereGrid& grid,
                                  const std::vector<double>& modes) {
  std::vector<double> u(grid.nodes());
  for (int k = 0; k < grid.nodes(); ++k) {
    const double x = grid.cos_th[k % grid.n_theta];
    u[k] = legendre_sum(modes, x).p;
  }
  return u;
}

RunResult run_experiment(const ExperimentConfig& cfg) {
  RunResult result;
  const char* root = std::getenv("IMCF_OUT_ROOT");
  fs::path out = cfg.out_dir;
  if (root && out.is_relative()) out = fs::path(root) / out;
  fs::create_directories(out);
  result.out_dir = out.string();

  LineFile log((out / "run.log").string());
  {
    std::ofstream resolved(out / "config.resolved");
    resolved << serialize_config(cfg);
  }

  const AmbientMetric metric = cfg.make_metric();
  const SphereGrid grid = SphereGrid::make(cfg.n_theta, cfg.n_phi);
  GraphSurface initial{&grid, &metric, initial_graph(grid, cfg.u0_modes)};

  FlowParams params;
  params.t_end = cfg.t_end;
  params.cfl = cfg.cfl;
  params.dt_max = cfg.dt_max;
  params.h_floor = cfg.h_floor;
  params.cadence = cfg.cadence;

  log.line("run: family=" + std::string(cfg.family == Family::Hyperbolic
                                            ? "hyperbolic"
                                        : cfg.family == Family::AdsSchwarzschild
                                            ? "ads_schwarzschild"
                                            : "perturbed") +
           " n_theta=" + std::to_string(cfg.n_theta) +
           " n_phi=" + std::to_string(cfg.n_phi) +
           " t_end=" + std::to_string(cfg.t_end));

  LineFile csv((out / "trace.csv").string());
  csv.line(kTraceHeader);
  result.trace = run_flow(initial, params, [&](const TraceRow& row) {
    csv.line(format_trace_row(row));
  });

  if (result.trace.halted) {
    log.line("halt: " + result.trace.halt_reason);
    result.exit_code = 2;
  }

  bool all_pass = true;
  nlohmann::json checks =
      run_checks(cfg, result.trace, metric, all_pass);
  result.report["checks"] = checks;
  result.report["halted"] = result.trace.halted;
  if (result.trace.halted)
    result.report["halt_reason"] = result.trace.halt_reason;
  result.report["samples"] = result.trace.rows.size();
  result.report["pass"] = all_pass && !result.trace.halted;
  {
    std::ofstream rep(out / "report.json");
    rep << result.report.dump(2) << "\n";
  }
  for (const auto& c : result.report["checks"])
    log.line("check " + c["name"].get<std::string>() + ": " +
             (c["pass"].get<bool>() ? "pass" : "FAIL"));
  if (result.exit_code == 0 && !all_pass) result.exit_code = 1;
  log.line("exit " + std::to_string(result.exit_code));
  return result;
}

RunResult verify_run_dir(const std::string& run_dir) {
  fs::path dir = run_dir;
  if (fs::is_regular_file(dir) && dir.filename() == "trace.csv")
    dir = dir.parent_path();
  std::ifstream cfg_in(dir / "config.resolved");
  if (!cfg_in)
    throw Error("verify: missing config.resolved next to trace.csv");
  std::stringstream ss;
  ss << cfg_in.rdbuf();
  const ExperimentConfig cfg = parse_config(ss.str());

  RunResult result;
  result.out_dir = dir.string();
  result.trace = read_trace_csv((dir / "trace.csv").string());
  if (result.trace.rows.empty()) throw Error("verify: empty trace");
  const AmbientMetric metric = cfg.make_metric();
  bool all_pass = true;
  result.report["checks"] = run_checks(cfg, result.trace, metric, all_pass);
  result.report["samples"] = result.trace.rows.size();
  result.report["pass"] = all_pass;
  result.exit_code = all_pass ? 0 : 1;
  return result;
}

std::vector<SweepCell> sweep(const ExperimentConfig& base,
                             const std::string& grid_text,
                             const std::string& out_root) {
  // parse the parameter grid
  std::map<std::string, std::vector<double>> axes;
  std::stringstream ss(grid_text);
  std::string line;
  while (std::getline(ss, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      if (a == std::string::npos) return std::string();
      const auto b = s.find_last_not_of(" \t\r");
      return s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    std::vector<double> vals;
    std::stringstream vs(line.substr(eq + 1));
    std::string item;
    while (std::getline(vs, item, ','))
      if (!trim(item).empty()) vals.push_back(std::stod(trim(item)));
    static const std::set<std::string> known = {"mass", "rho0", "eccentricity",
                                                "q_amplitude"};
    if (!known.count(key)) throw Error("sweep: unknown parameter " + key);
    if (vals.empty()) throw Error("sweep: empty value list for " + key);
    axes[key] = vals;
  }

  std::vector<SweepCell> cells;
  cells.push_back({"", base, -1, 0, 0, false});
  for (const auto& [key, vals] : axes) {
    std::vector<SweepCell> next;
    for (const SweepCell& cell : cells)
      for (double v : vals) {
        SweepCell c = cell;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s%s=%g", cell.name.empty() ? "" : "_",
                      key.c_str(), v);
        c.name += buf;
        if (key == "mass") {
          c.cfg.mass = v;
          if (c.cfg.family == Family::Hyperbolic && v > 0)
            c.cfg.family = Family::AdsSchwarzschild;
        } else if (key == "rho0") {
          if (c.cfg.u0_modes.empty()) c.cfg.u0_modes = {v};
          else c.cfg.u0_modes[0] = v;
        } else if (key == "eccentricity") {
          if (c.cfg.u0_modes.size() < 2) c.cfg.u0_modes.resize(2, 0.0);
          c.cfg.u0_modes[1] = v;
        } else if (key == "q_amplitude") {
          c.cfg.q_amplitude = v;
        }
        next.push_back(std::move(c));
      }
    cells = std::move(next);
  }

  const unsigned workers =
      std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                      cells.size()));
  std::atomic<std::size_t> cursor{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= cells.size()) return;
      SweepCell& cell = cells[i];
      cell.cfg.out_dir =
          (fs::path(out_root) / ("cell" + std::to_string(i) + cell.name))
              .string();
      try {
        const RunResult r = run_experiment(cell.cfg);
        cell.exit_code = r.exit_code;
        cell.pass = r.exit_code == 0;
        if (!r.trace.rows.empty())
          cell.final_hawking = r.trace.rows.back().hawking;
        for (const auto& c : r.report["checks"])
          if (c["name"] == "theorem_1_2" && c.contains("extrapolated_mh"))
            cell.extrapolated_limit = c["extrapolated_mh"].get<double>();
      } catch (const std::exception&) {
        cell.exit_code = 3;
        cell.pass = false;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();

  fs::create_directories(out_root);
  std::ofstream summary(fs::path(out_root) / "summary.csv");
  summary << "cell,exit,pass,final_m_H,extrapolated_limit\n";
  summary.precision(17);
  for (std::size_t i = 0; i < cells.size(); ++i)
    summary << "cell" << i << cells[i].name << "," << cells[i].exit_code << ","
            << (cells[i].pass ? 1 : 0) << "," << cells[i].final_hawking << ","
            << cells[i].extrapolated_limit << "\n";
  return cells;
}

}  // namespace imcf
