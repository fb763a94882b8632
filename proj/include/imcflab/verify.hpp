#pragma once

#include <optional>
#include <vector>

#include "imcflab/ambient.hpp"
#include "imcflab/flow.hpp"

namespace imcf {

// Per-interval Geroch defect d_k = m_H(t_{k+1}) - m_H(t_k) - correction_k,
// correction_k = (16 pi)^{-3/2} int_{t_k}^{t_{k+1}} A^{1/2} (16 pi - 8 pi chi
// + int (R+6) dmu) dtau with chi = 2, trapezoid in tau.
struct MonotonicityReport {
  std::vector<double> defects;
  double min_defect = 0;
  double tol = 0;
  bool pass = false;
};
MonotonicityReport geroch_report(const FlowTrace& trace,
                                 std::optional<double> tol_geroch = {});

struct StampacchiaReport {
  double c = 0;            // min over samples of min_H / min{1, sqrt(t-t0)}
  bool precondition_ok = false;  // min angle >= delta0 throughout the window
  bool pass = false;
  int n_samples = 0;
};
StampacchiaReport stampacchia_report(const FlowTrace& trace, double t0,
                                     double delta0 = 0.9);

struct StarshapeReport {
  bool reached = false;
  double T = 0;  // first time with min<nu,dr> >= 1-eta from there on
};
StarshapeReport starshape_report(const FlowTrace& trace, double eta);

struct UmbilicityDecayReport {
  double sup_product = 0;        // sup over samples of int|Aring|^2 * A^{1/2}
  double mid_max = 0;            // max over [T/4, 3T/4]
  double last_quarter_max = 0;   // max over [3T/4, T]
  double fitted_slope = 0;       // d log int|Aring|^2 / d log A, final half
  bool pass = false;             // late sup finite and not growing
};
UmbilicityDecayReport umbilicity_decay_report(const FlowTrace& trace);

struct RoundnessReport {
  double sup_H_minus_2 = 0;
  double sup_tracefree = 0;
};
RoundnessReport asymptotic_roundness_report(const FlowTrace& trace);

// Theorem-level limit comparison for m > 0 families: extrapolates m_H(t)
// and (m/2) * limit_factor(t) in e^{-t/2} over the last third of samples.
struct LimitReport {
  double mass = 0;
  double extrapolated_mh = 0;
  double extrapolated_prediction = 0;  // (m/2) * extrapolated functional
  double relative_gap = 0;
  double gap_first_quarter = 0;  // |m_H - (m/2) factor| early vs late
  double gap_last_quarter = 0;
  double min_holder_slack = 0;   // min over samples of (limit_factor - 1)
  double sup_grad_bound = 0;     // sup over samples of e^t sup|grad f|^2
  double final_radius_spread = 0;  // r_outer - r_inner at the last sample
  bool theorem_1_2_pass = false;   // extrapolated limit >= (m/2)(1 - tol)
  bool pair_consistent = false;    // the two extrapolations agree to tol_pair
  bool pass = false;
};
LimitReport limit_report(const FlowTrace& trace, const AmbientMetric& metric,
                         double tol_limit = 0.02, double tol_pair = 0.02);

// least-squares fit of y ~ a + b exp(-t/2) over (t, y) pairs
std::pair<double, double> fit_exp_half(const std::vector<double>& t,
                                       const std::vector<double>& y);

}  // namespace imcf
