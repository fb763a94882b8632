#include "imcflab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace imcf {

std::pair<double, double> fit_exp_half(const std::vector<double>& t,
                                       const std::vector<double>& y) {
  // normal equations for y = a + b z, z = exp(-t/2)
  double s1 = 0, sz = 0, szz = 0, sy = 0, szy = 0;
  const std::size_t n = t.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double z = std::exp(-t[i] / 2);
    s1 += 1;
    sz += z;
    szz += z * z;
    sy += y[i];
    szy += z * y[i];
  }
  const double det = s1 * szz - sz * sz;
  if (!(std::abs(det) > 0)) throw VerifyError("fit_exp_half: singular fit");
  const double a = (szz * sy - sz * szy) / det;
  const double b = (s1 * szy - sz * sy) / det;
  return {a, b};
}

MonotonicityReport geroch_report(const FlowTrace& trace,
                                 std::optional<double> tol_geroch) {
  const auto& rows = trace.rows;
  if (rows.size() < 3)
    throw VerifyError("geroch_report: need at least 3 samples");
  for (const TraceRow& r : rows)
    if (!std::isfinite(r.int_r_plus6))
      throw VerifyError("trace not instrumented");

  MonotonicityReport rep;
  const double c = std::pow(16 * kPi, -1.5);
  double mh_scale = 0;
  for (const TraceRow& r : rows) mh_scale = std::max(mh_scale, std::abs(r.hawking));
  rep.tol = tol_geroch ? *tol_geroch : 1e-6 * std::max(1e-3, mh_scale);

  rep.min_defect = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + 1 < rows.size(); ++k) {
    // chi = 2 makes the 16 pi - 8 pi chi term vanish
    const double gk = std::sqrt(rows[k].area) * rows[k].int_r_plus6;
    const double gk1 = std::sqrt(rows[k + 1].area) * rows[k + 1].int_r_plus6;
    const double corr =
        c * 0.5 * (gk + gk1) * (rows[k + 1].t - rows[k].t);
    const double defect = rows[k + 1].hawking - rows[k].hawking - corr;
    rep.defects.push_back(defect);
    rep.min_defect = std::min(rep.min_defect, defect);
  }
  rep.pass = rep.min_defect >= -rep.tol;
  return rep;
}

StampacchiaReport stampacchia_report(const FlowTrace& trace, double t0,
                                     double delta0) {
  StampacchiaReport rep;
  rep.precondition_ok = true;
  rep.c = std::numeric_limits<double>::infinity();
  for (const TraceRow& r : trace.rows) {
    if (r.t <= t0) continue;
    ++rep.n_samples;
    if (r.min_angle < delta0) rep.precondition_ok = false;
    const double denom = std::min(1.0, std::sqrt(r.t - t0));
    rep.c = std::min(rep.c, r.min_H / denom);
  }
  if (rep.n_samples == 0)
    throw VerifyError("stampacchia_report: insufficient samples");
  rep.pass = rep.precondition_ok && rep.c > 0;
  return rep;
}

StarshapeReport starshape_report(const FlowTrace& trace, double eta) {
  StarshapeReport rep;
  const auto& rows = trace.rows;
  const double thresh = 1.0 - eta;
  // first index from which min angle stays >= 1 - eta
  std::size_t idx = rows.size();
  for (std::size_t i = rows.size(); i-- > 0;) {
    if (rows[i].min_angle >= thresh)
      idx = i;
    else
      break;
  }
  if (idx < rows.size()) {
    rep.reached = true;
    rep.T = rows[idx].t;
  }
  return rep;
}

UmbilicityDecayReport umbilicity_decay_report(const FlowTrace& trace) {
  UmbilicityDecayReport rep;
  const auto& rows = trace.rows;
  if (rows.empty()) throw VerifyError("umbilicity_decay_report: empty trace");
  const double T0 = rows.front().t, T1 = rows.back().t, span = T1 - T0;
  for (const TraceRow& r : rows) {
    const double product = r.umb_l2 * std::sqrt(r.area);
    rep.sup_product = std::max(rep.sup_product, product);
    if (r.t >= T0 + span / 4 && r.t <= T0 + 3 * span / 4)
      rep.mid_max = std::max(rep.mid_max, product);
    if (r.t >= T0 + 3 * span / 4)
      rep.last_quarter_max = std::max(rep.last_quarter_max, product);
  }
  // slope of log int|Aring|^2 against log A over the final half
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const TraceRow& r : rows) {
    if (r.t < T0 + span / 2 || r.umb_l2 <= 1e-300) continue;
    const double x = std::log(r.area), y = std::log(r.umb_l2);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++n;
  }
  rep.fitted_slope = n >= 2 ? (n * sxy - sx * sy) / (n * sxx - sx * sx)
                            : std::numeric_limits<double>::quiet_NaN();
  rep.pass = std::isfinite(rep.last_quarter_max) &&
             rep.last_quarter_max <= 1.1 * rep.mid_max + 1e-12;
  return rep;
}

RoundnessReport asymptotic_roundness_report(const FlowTrace& trace) {
  if (trace.rows.empty())
    throw VerifyError("asymptotic_roundness_report: empty trace");
  const TraceRow& r = trace.rows.back();
  RoundnessReport rep;
  rep.sup_H_minus_2 = std::max(std::abs(r.min_H - 2), std::abs(r.max_H - 2));
  rep.sup_tracefree = r.max_tracefree;
  return rep;
}

LimitReport limit_report(const FlowTrace& trace, const AmbientMetric& metric,
                         double tol_limit, double tol_pair) {
  if (!(metric.mass() > 0))
    throw VerifyError("limit_report: rejected, mass must be > 0");
  const auto& rows = trace.rows;
  if (rows.size() < 6) throw VerifyError("limit_report: trace too short");

  LimitReport rep;
  rep.mass = metric.mass();
  const double m2 = rep.mass / 2;

  const double T0 = rows.front().t, T1 = rows.back().t, span = T1 - T0;
  std::vector<double> t_fit, mh_fit, pred_fit;
  rep.min_holder_slack = std::numeric_limits<double>::infinity();
  for (const TraceRow& r : rows) {
    rep.min_holder_slack = std::min(rep.min_holder_slack, r.limit_factor - 1);
    rep.sup_grad_bound =
        std::max(rep.sup_grad_bound, std::exp(r.t) * r.grad_f2_max);
    if (r.t >= T0 + 2 * span / 3) {
      t_fit.push_back(r.t);
      mh_fit.push_back(r.hawking);
      pred_fit.push_back(m2 * r.limit_factor);
    }
    const double gap = std::abs(r.hawking - m2 * r.limit_factor);
    if (r.t <= T0 + span / 4)
      rep.gap_first_quarter = std::max(rep.gap_first_quarter, gap);
    if (r.t >= T0 + 3 * span / 4)
      rep.gap_last_quarter = std::max(rep.gap_last_quarter, gap);
  }
  rep.extrapolated_mh = fit_exp_half(t_fit, mh_fit).first;
  rep.extrapolated_prediction = fit_exp_half(t_fit, pred_fit).first;
  const double scale =
      std::max(std::abs(rep.extrapolated_mh), std::abs(rep.extrapolated_prediction));
  rep.relative_gap =
      std::abs(rep.extrapolated_mh - rep.extrapolated_prediction) / scale;
  rep.final_radius_spread = rows.back().r_outer - rows.back().r_inner;

  rep.theorem_1_2_pass = rep.extrapolated_mh >= m2 * (1 - tol_limit) &&
                         rep.extrapolated_prediction >= m2 * (1 - tol_limit);
  rep.pair_consistent = rep.relative_gap <= tol_pair;
  rep.pass = rep.theorem_1_2_pass && rep.pair_consistent;
  return rep;
}

}  // namespace imcf
