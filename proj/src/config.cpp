#include "imcflab/config.hpp"

#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

namespace imcf {

namespace {

std::string trim(std::string_view s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return std::string(s.substr(a, b - a + 1));
}

std::vector<double> parse_list(const std::string& v, bool& ok) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  ok = true;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      if (pos != item.size()) ok = false;
    } catch (...) {
      ok = false;
    }
  }
  if (out.empty()) ok = false;
  return out;
}

struct KV {
  std::map<std::string, std::string> values;  // "section.key" -> value
  std::vector<std::string> errors;

  std::optional<std::string> take(const std::string& key) {
    auto it = values.find(key);
    if (it == values.end()) return std::nullopt;
    std::string v = it->second;
    values.erase(it);
    return v;
  }

  void number(const std::string& key, double& dst, double lo, double hi,
              const char* range_desc) {
    auto v = take(key);
    if (!v) return;
    try {
      std::size_t pos = 0;
      const double x = std::stod(*v, &pos);
      if (pos != v->size()) throw std::invalid_argument("trailing");
      if (!(x >= lo && x <= hi)) {
        errors.push_back(key + " = " + *v + " out of range " + range_desc);
        return;
      }
      dst = x;
    } catch (...) {
      errors.push_back(key + ": not a number ('" + *v + "')");
    }
  }

  void integer(const std::string& key, int& dst, int lo, int hi,
               const char* range_desc) {
    double d = dst;
    number(key, d, lo, hi, range_desc);
    if (d != std::floor(d))
      errors.push_back(key + " must be an integer");
    else
      dst = static_cast<int>(d);
  }

  void boolean(const std::string& key, std::optional<bool>& dst) {
    auto v = take(key);
    if (!v) return;
    if (*v == "true" || *v == "1")
      dst = true;
    else if (*v == "false" || *v == "0")
      dst = false;
    else
      errors.push_back(key + ": expected true/false ('" + *v + "')");
  }
};

}  // namespace

ConfigError::ConfigError(std::vector<std::string> v)
    : Error("invalid config:\n  " + [&] {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i)
          s += (i ? "\n  " : "") + v[i];
        return s;
      }()),
      violations(std::move(v)) {}

ExperimentConfig parse_config(const std::string& text) {
  KV kv;
  std::string section;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[' && line.back() == ']') {
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      kv.errors.push_back("line " + std::to_string(lineno) +
                          ": expected key = value");
      continue;
    }
    const std::string key = section + "." + trim(line.substr(0, eq));
    if (kv.values.count(key))
      kv.errors.push_back("duplicate key " + key);
    kv.values[key] = trim(line.substr(eq + 1));
  }

  ExperimentConfig cfg;

  // [metric]
  bool family_given = false;
  if (auto fam = kv.take("metric.family")) {
    family_given = true;
    if (*fam == "hyperbolic")
      cfg.family = Family::Hyperbolic;
    else if (*fam == "ads_schwarzschild")
      cfg.family = Family::AdsSchwarzschild;
    else if (*fam == "perturbed")
      cfg.family = Family::Perturbed;
    else
      kv.errors.push_back("metric.family: unknown family '" + *fam +
                          "' (hyperbolic | ads_schwarzschild | perturbed)");
  } else {
    kv.errors.push_back("metric.family: missing required key");
  }
  bool mass_given = kv.values.count("metric.mass") > 0;
  kv.number("metric.mass", cfg.mass, 0.0, 1e6, "[0, 1e6]");
  kv.number("metric.q_amplitude", cfg.q_amplitude, 0.0, 0.5, "[0, 0.5]");
  kv.number("metric.q_decay_rate", cfg.q_decay_rate, 3.0, 100.0, "[3, 100]");
  if (auto v = kv.take("metric.q_modes")) {
    bool ok = false;
    cfg.q_modes = parse_list(*v, ok);
    if (!ok) kv.errors.push_back("metric.q_modes: expected comma-separated numbers");
  }
  if (family_given) {
    if (cfg.family == Family::AdsSchwarzschild && (!mass_given || cfg.mass <= 0))
      kv.errors.push_back("metric.mass: mass required (> 0) for ads_schwarzschild");
    if (cfg.family == Family::Hyperbolic && mass_given && cfg.mass != 0)
      kv.errors.push_back("metric.mass: must be 0 (or absent) for hyperbolic");
    if (cfg.family == Family::Perturbed) {
      if (cfg.q_modes.empty())
        kv.errors.push_back("metric.q_modes: required for perturbed family");
      if (cfg.mass > 0 && cfg.q_decay_rate < 5)
        kv.errors.push_back(
            "metric.q_decay_rate: must be >= 5 when mass > 0 "
            "(AdS-Schwarzschild experiments)");
    } else {
      if (cfg.q_amplitude != 0 || !cfg.q_modes.empty())
        kv.errors.push_back("metric.q_*: only meaningful for perturbed family");
    }
  }

  // [grid]
  kv.integer("grid.n_theta", cfg.n_theta, 16, 4096, "[16, 4096]");
  kv.integer("grid.n_phi", cfg.n_phi, 1, 8192, "[1, 8192]");
  if (cfg.n_phi != 1 && (cfg.n_phi < 8 || cfg.n_phi % 2))
    kv.errors.push_back("grid.n_phi: must be 1 (axisymmetric) or even >= 8");

  // [initial]
  bool rho_given = kv.values.count("initial.rho0") > 0;
  bool modes_given = kv.values.count("initial.u0_modes") > 0;
  double rho0 = 3.0;
  kv.number("initial.rho0", rho0, 1.0 + 1e-9, 50.0, "(1, 50]");
  if (auto v = kv.take("initial.u0_modes")) {
    bool ok = false;
    cfg.u0_modes = parse_list(*v, ok);
    if (!ok)
      kv.errors.push_back("initial.u0_modes: expected comma-separated numbers");
  }
  if (rho_given && modes_given)
    kv.errors.push_back("initial: give rho0 or u0_modes, not both");
  if (!modes_given) cfg.u0_modes = {rho0};

  // [flow]
  kv.number("flow.t_end", cfg.t_end, 0.0, 1e4, "[0, 1e4]");
  kv.number("flow.cfl", cfg.cfl, 1e-6, 1e6, "(0, 1e6]");
  kv.number("flow.dt_max", cfg.dt_max, 1e-12, 10.0, "(0, 10]");
  kv.number("flow.h_floor", cfg.h_floor, 0.0, 10.0, "[0, 10]");
  kv.number("flow.cadence", cfg.cadence, 1e-6, 1e4, "(0, 1e4]");

  // [checks]
  if (kv.values.count("checks.tol_geroch")) {
    double t = 0;
    kv.number("checks.tol_geroch", t, 0.0, 1.0, "(0, 1]");
    cfg.tol_geroch = t;
  }
  kv.number("checks.tol_limit", cfg.tol_limit, 1e-12, 1.0, "(0, 1]");
  kv.number("checks.tol_pair", cfg.tol_pair, 1e-12, 1.0, "(0, 1]");
  kv.number("checks.eta", cfg.eta, 1e-12, 1.0, "(0, 1]");
  kv.number("checks.delta0", cfg.delta0, 1e-12, 1.0, "(0, 1]");
  kv.number("checks.barrier_slack", cfg.barrier_slack, 0.0, 1.0, "[0, 1]");
  kv.number("checks.mh_zero_tol", cfg.mh_zero_tol, 0.0, 1.0, "(0, 1]");
  kv.number("checks.roundness_tol", cfg.roundness_tol, 0.0, 1.0, "(0, 1]");
  kv.boolean("checks.round_oracle", cfg.checks.round_oracle);
  kv.boolean("checks.geroch", cfg.checks.geroch);
  kv.boolean("checks.barrier", cfg.checks.barrier);
  kv.boolean("checks.umbilicity", cfg.checks.umbilicity);
  kv.boolean("checks.starshape", cfg.checks.starshape);
  kv.boolean("checks.stampacchia", cfg.checks.stampacchia);
  kv.boolean("checks.roundness", cfg.checks.roundness);
  kv.boolean("checks.limit", cfg.checks.limit);

  // [output]
  if (auto v = kv.take("output.dir")) {
    if (v->empty())
      kv.errors.push_back("output.dir: must be non-empty");
    else
      cfg.out_dir = *v;
  }
  if (auto v = kv.take("output.seed")) {
    try {
      cfg.seed = std::stoull(*v);
    } catch (...) {
      kv.errors.push_back("output.seed: not an unsigned integer");
    }
  }
  std::optional<bool> quiet;
  kv.boolean("output.quiet", quiet);
  cfg.quiet = quiet.value_or(false);

  for (const auto& [key, value] : kv.values)
    kv.errors.push_back("unknown key: " + key);

  if (!kv.errors.empty()) throw ConfigError(kv.errors);
  return cfg;
}

AmbientMetric ExperimentConfig::make_metric() const {
  switch (family) {
    case Family::Hyperbolic:
      return AmbientMetric::hyperbolic();
    case Family::AdsSchwarzschild:
      return AmbientMetric::ads_schwarzschild(mass);
    case Family::Perturbed: {
      QSpec q{q_amplitude, q_decay_rate, q_modes};
      return AmbientMetric::perturbed(mass, q);
    }
  }
  throw Error("unreachable");
}

bool ExperimentConfig::round_initial() const {
  for (std::size_t k = 1; k < u0_modes.size(); ++k)
    if (u0_modes[k] != 0.0) return false;
  return true;
}

std::string serialize_config(const ExperimentConfig& cfg) {
  std::ostringstream os;
  os.precision(17);
  auto list = [](const std::vector<double>& v) {
    std::ostringstream s;
    s.precision(17);
    for (std::size_t i = 0; i < v.size(); ++i) s << (i ? ", " : "") << v[i];
    return s.str();
  };
  os << "[metric]\n";
  os << "family = "
     << (cfg.family == Family::Hyperbolic        ? "hyperbolic"
         : cfg.family == Family::AdsSchwarzschild ? "ads_schwarzschild"
                                                   : "perturbed")
     << "\n";
  if (cfg.family != Family::Hyperbolic) os << "mass = " << cfg.mass << "\n";
  if (cfg.family == Family::Perturbed) {
    os << "q_amplitude = " << cfg.q_amplitude << "\n";
    os << "q_decay_rate = " << cfg.q_decay_rate << "\n";
    os << "q_modes = " << list(cfg.q_modes) << "\n";
  }
  os << "\n[grid]\n";
  os << "n_theta = " << cfg.n_theta << "\n";
  os << "n_phi = " << cfg.n_phi << "\n";
  os << "\n[initial]\n";
  os << "u0_modes = " << list(cfg.u0_modes) << "\n";
  os << "\n[flow]\n";
  os << "t_end = " << cfg.t_end << "\n";
  os << "cfl = " << cfg.cfl << "\n";
  os << "dt_max = " << cfg.dt_max << "\n";
  os << "h_floor = " << cfg.h_floor << "\n";
  os << "cadence = " << cfg.cadence << "\n";
  os << "\n[checks]\n";
  if (cfg.tol_geroch) os << "tol_geroch = " << *cfg.tol_geroch << "\n";
  os << "tol_limit = " << cfg.tol_limit << "\n";
  os << "tol_pair = " << cfg.tol_pair << "\n";
  os << "eta = " << cfg.eta << "\n";
  os << "delta0 = " << cfg.delta0 << "\n";
  os << "barrier_slack = " << cfg.barrier_slack << "\n";
  os << "mh_zero_tol = " << cfg.mh_zero_tol << "\n";
  os << "roundness_tol = " << cfg.roundness_tol << "\n";
  auto toggle = [&](const char* name, const std::optional<bool>& v) {
    if (v) os << name << " = " << (*v ? "true" : "false") << "\n";
  };
  toggle("round_oracle", cfg.checks.round_oracle);
  toggle("geroch", cfg.checks.geroch);
  toggle("barrier", cfg.checks.barrier);
  toggle("umbilicity", cfg.checks.umbilicity);
  toggle("starshape", cfg.checks.starshape);
  toggle("stampacchia", cfg.checks.stampacchia);
  toggle("roundness", cfg.checks.roundness);
  toggle("limit", cfg.checks.limit);
  os << "\n[output]\n";
  os << "dir = " << cfg.out_dir << "\n";
  os << "seed = " << cfg.seed << "\n";
  os << "quiet = " << (cfg.quiet ? "true" : "false") << "\n";
  return os.str();
}

}  // namespace imcf
