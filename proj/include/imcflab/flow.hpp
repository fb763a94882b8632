#pragma once

#include <functional>
#include <string>
#include <vector>

#include "imcflab/surface.hpp"

namespace imcf {

struct FlowParams {
  double t_end = 4.0;
  double cfl = 0.2;
  double dt_max = 0.01;
  double h_floor = 1e-3;   // halt when min H drops to this
  double cadence = 0.05;   // trace sample spacing
};

struct FlowState {
  double t = 0.0;
  GraphSurface surface;
  SliceGeometry geom;
  double dt_last = 0.0;
};

// Spherical sub/supersolution radii: rho_pm(t) solves
//   ln sinh(rho) - ln sinh(rho0) + sign (e^{-2 rho0} - e^{-2 rho}) = t/2
// by safeguarded Newton (residual <= 1e-12). sign 0 returns the exact
// hyperbolic solution arcsinh(sinh(rho0) e^{t/2}).
double barrier_radius(double rho0, double t, int sign);

struct BarrierPair {
  double rho_plus0 = 0;   // inner radius of the initial slice
  double rho_minus0 = 0;  // outer radius of the initial slice
  double plus(double t) const { return barrier_radius(rho_plus0, t, +1); }
  double minus(double t) const { return barrier_radius(rho_minus0, t, -1); }
};

struct TraceRow {
  double t = 0;
  double area = 0, hawking = 0;
  double r_inner = 0, r_outer = 0;
  double min_H = 0, max_H = 0, min_angle = 0;
  double umb_l2 = 0;                    // int |Aring|^2 dmu
  double rho_plus = 0, rho_minus = 0;   // barrier radii at t
  double int_r_plus6 = 0;               // int (R+6) dmu
  double area_radius = 0;               // rhat
  double limit_factor = 0;              // (avg e^{2f})^{1/2} avg e^{-f}
  double grad_f2_max = 0;               // sup h^{ab} f_a f_b
  double max_tracefree = 0;             // sup |Aring|
  double resid_w = 0, resid_H = 0;      // NaN on first/last sample
  double dt_last = 0;
};

struct FlowTrace {
  std::vector<TraceRow> rows;
  bool halted = false;
  std::string halt_reason;
  std::vector<double> final_u;  // terminal graph values
};

FlowState make_state(GraphSurface surface);

// one explicit RK4 step of du/dt = 1/(H <nu,dr>); throws FlowHalt when
// mean-convexity (H <= h_floor) or graph immersion is lost
FlowState step(const FlowState& state, double dt, double h_floor = 1e-3);

// cfl * h_min^2 * (min H)^2 capped at dt_max, h_min in induced-metric length
double adaptive_dt(const FlowState& state, const FlowParams& params);

using RowCallback = std::function<void(const TraceRow&)>;

// Advance to t_end sampling at the configured cadence. Residual columns are
// centered differences across adjacent samples (including the tangential
// advection of the material derivative), so rows reach the callback with a
// one-sample delay. A halt preserves the rows recorded so far.
FlowTrace run_flow(const GraphSurface& initial, const FlowParams& params,
                   const RowCallback& on_row = {});

}  // namespace imcf
