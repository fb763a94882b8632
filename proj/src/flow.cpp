#include "imcflab/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "imcflab/simd.hpp"

namespace imcf {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::vector<double> flow_speed(const SliceGeometry& geom, double h_floor) {
  if (geom.min_H <= h_floor) throw FlowHalt("mean-convexity lost");
  std::vector<double> v(geom.H.size());
  for (std::size_t k = 0; k < v.size(); ++k)
    v[k] = 1.0 / (geom.H[k] * geom.angle[k]);
  return v;
}

struct Snapshot {
  double t = 0;
  GraphSurface surface;
  SliceGeometry geom;
  SliceCurvature curv;
};

// residual of the w evolution identity and the Riccati identity for H at
// the middle of three consecutive samples; time derivative is the centered
// difference plus the tangential advection of the material derivative
std::pair<double, double> sample_residuals(const Snapshot& prev,
                                           const Snapshot& mid,
                                           const Snapshot& next) {
  const SphereGrid& g = *mid.surface.grid;
  const int N = g.nodes(), nth = g.n_theta;
  const double dt2 = next.t - prev.t;

  const auto lap_w = surface_laplacian(mid.surface, mid.geom, mid.geom.w);
  const auto lap_H = surface_laplacian(mid.surface, mid.geom, mid.geom.H);
  const auto grad2_H = surface_grad2(mid.surface, mid.geom, mid.geom.H);

  std::vector<double> wth(N), wph(N, 0.0), Hth(N), Hph(N, 0.0);
  g.d_theta(mid.geom.w, wth, Parity::Scalar);
  g.d_theta(mid.geom.H, Hth, Parity::Scalar);
  if (!g.axisymmetric()) {
    g.d_phi(mid.geom.w, wph);
    g.d_phi(mid.geom.H, Hph);
  }

  double sup_w = 0, sup_H = 0;
  const double e2r = std::exp(2 * mid.geom.r_outer);
  for (int k = 0; k < N; ++k) {
    const int i = k % nth;
    const double s2 = g.sin_th[i] * g.sin_th[i];
    const WarpJet wj = mid.surface.metric->warp(mid.geom.u[k], g.theta[i]);
    const double H = mid.geom.H[k];
    const double Nn = mid.geom.angle[k];
    const double nu_th = -Nn * mid.geom.u_th[k] / wj.W;
    const double nu_ph = -Nn * mid.geom.u_ph[k] / (wj.W * s2);

    const double cd_w = (next.geom.w[k] - prev.geom.w[k]) / dt2;
    const double adv_w = (nu_th * wth[k] + nu_ph * wph[k]) / H;
    const double rw = cd_w + adv_w - lap_w[k] / (H * H) -
                      mid.geom.norm_A2[k] / (H * H) * mid.geom.w[k];
    const double scaled =
        std::abs(rw) * H * H * e2r / (1.0 + std::sqrt(mid.geom.norm_A2[k]));
    sup_w = std::max(sup_w, scaled);

    const double cd_H = (next.geom.H[k] - prev.geom.H[k]) / dt2;
    const double adv_H = (nu_th * Hth[k] + nu_ph * Hph[k]) / H;
    const double rH = cd_H + adv_H - lap_H[k] / (H * H) +
                      2 * grad2_H[k] / (H * H * H) +
                      (mid.curv.ric_nn[k] + mid.geom.norm_A2[k]) / H;
    sup_H = std::max(sup_H, std::abs(rH));
  }
  return {sup_w, sup_H};
}

TraceRow make_row(const Snapshot& s, const BarrierPair& barrier) {
  TraceRow row;
  row.t = s.t;
  row.area = s.geom.area;
  row.hawking = s.geom.hawking;
  row.r_inner = s.geom.r_inner;
  row.r_outer = s.geom.r_outer;
  row.min_H = s.geom.min_H;
  row.max_H = s.geom.max_H;
  row.min_angle = s.geom.min_angle;
  row.umb_l2 = s.geom.int_tracefree2;
  row.rho_plus = barrier.plus(s.t);
  row.rho_minus = barrier.minus(s.t);
  row.int_r_plus6 = s.curv.int_r_plus6;
  auto [rhat, f] = extract_f(s.geom, s.surface);
  row.area_radius = rhat;
  row.limit_factor = limit_functional(f, *s.surface.grid);
  const auto g2 = surface_grad2(s.surface, s.geom, f);
  row.grad_f2_max = *std::max_element(g2.begin(), g2.end());
  row.max_tracefree = s.geom.max_tracefree;
  row.resid_w = kNaN;
  row.resid_H = kNaN;
  row.dt_last = 0;
  return row;
}

}  // namespace

double barrier_radius(double rho0, double t, int sign) {
  if (!(rho0 > 0.5)) throw FlowHalt("barrier_radius: rho0 too small");
  const double guess = std::asinh(std::sinh(rho0) * std::exp(t / 2));
  if (sign == 0) return guess;
  const double target = t / 2;
  double rho = guess;
  double lo = std::max(0.5, rho0 - 2.0), hi = guess + 2.0;
  auto F = [&](double x) {
    return std::log(std::sinh(x)) - std::log(std::sinh(rho0)) +
           sign * (std::exp(-2 * rho0) - std::exp(-2 * x)) - target;
  };
  for (int it = 0; it < 50; ++it) {
    const double f = F(rho);
    if (std::abs(f) <= 1e-12) return rho;
    const double df = std::cosh(rho) / std::sinh(rho) +
                      2.0 * sign * std::exp(-2 * rho);
    double next = rho - f / df;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);  // bisect safeguard
    if (f > 0)
      hi = rho;
    else
      lo = rho;
    rho = next;
  }
  throw FlowHalt("barrier_radius: Newton did not converge (bad rho0?)");
}

FlowState make_state(GraphSurface surface) {
  FlowState st;
  st.geom = assemble_geometry(surface);
  st.surface = std::move(surface);
  return st;
}

FlowState step(const FlowState& state, double dt, double h_floor) {
  if (dt == 0.0) return state;
  const int N = state.surface.grid->nodes();
  GraphSurface work = state.surface;

  auto stage = [&](const std::vector<double>& u) {
    work.u = u;
    SliceGeometry geom;
    try {
      geom = assemble_geometry(work);
    } catch (const GraphError&) {
      throw FlowHalt("graph broke");
    }
    return flow_speed(geom, h_floor);
  };

  const std::vector<double>& u0 = state.surface.u;
  std::vector<double> k1 = flow_speed(state.geom, h_floor);
  std::vector<double> tmp = u0;
  simd::axpy(dt / 2, k1.data(), tmp.data(), N);
  std::vector<double> k2 = stage(tmp);
  tmp = u0;
  simd::axpy(dt / 2, k2.data(), tmp.data(), N);
  std::vector<double> k3 = stage(tmp);
  tmp = u0;
  simd::axpy(dt, k3.data(), tmp.data(), N);
  std::vector<double> k4 = stage(tmp);

  std::vector<double> u1 = u0;
  simd::axpy(dt / 6, k1.data(), u1.data(), N);
  simd::axpy(dt / 3, k2.data(), u1.data(), N);
  simd::axpy(dt / 3, k3.data(), u1.data(), N);
  simd::axpy(dt / 6, k4.data(), u1.data(), N);

  FlowState out;
  out.t = state.t + dt;
  work.u = std::move(u1);
  try {
    out.geom = assemble_geometry(work);
  } catch (const GraphError&) {
    throw FlowHalt("graph broke");
  }
  out.surface = std::move(work);
  out.dt_last = dt;
  if (out.geom.min_H <= h_floor) throw FlowHalt("mean-convexity lost");
  return out;
}

double adaptive_dt(const FlowState& state, const FlowParams& params) {
  const SphereGrid& g = *state.surface.grid;
  const SliceGeometry& geom = state.geom;
  double dth_min = std::numeric_limits<double>::infinity();
  for (int i = 0; i + 1 < g.n_theta; ++i)
    dth_min = std::min(dth_min, g.theta[i + 1] - g.theta[i]);
  const double h11_min = *std::min_element(geom.h11.begin(), geom.h11.end());
  double hmin2 = h11_min * dth_min * dth_min;
  if (!g.axisymmetric()) {
    const double h22_min =
        *std::min_element(geom.h22.begin(), geom.h22.end());
    hmin2 = std::min(hmin2, h22_min * g.dphi * g.dphi);
  }
  const double dt = params.cfl * hmin2 * geom.min_H * geom.min_H;
  return std::min(dt, params.dt_max);
}

FlowTrace run_flow(const GraphSurface& initial, const FlowParams& params,
                   const RowCallback& on_row) {
  FlowTrace trace;
  FlowState state = make_state(initial);
  if (state.geom.min_angle <= 0)
    throw FlowHalt("initial surface is not star-shaped");
  const BarrierPair barrier{state.geom.r_inner, state.geom.r_outer};

  std::vector<Snapshot> ring;
  std::size_t emitted = 0;
  auto emit_up_to = [&](std::size_t end) {
    if (!on_row) {
      emitted = std::max(emitted, end);
      return;
    }
    for (; emitted < end && emitted < trace.rows.size(); ++emitted)
      on_row(trace.rows[emitted]);
  };
  auto sample = [&](const FlowState& st) {
    Snapshot snap{st.t, st.surface, st.geom,
                  slice_curvature(st.surface, st.geom)};
    TraceRow row = make_row(snap, barrier);
    row.dt_last = st.dt_last;
    trace.rows.push_back(row);
    ring.push_back(std::move(snap));
    if (ring.size() == 3) {
      auto [rw, rH] = sample_residuals(ring[0], ring[1], ring[2]);
      TraceRow& mid = trace.rows[trace.rows.size() - 2];
      mid.resid_w = rw;
      mid.resid_H = rH;
      ring.erase(ring.begin());
    }
    // everything but the newest row is final
    if (trace.rows.size() >= 2) emit_up_to(trace.rows.size() - 1);
  };

  sample(state);
  const double eps = 1e-12;
  try {
    int k = 1;
    while (state.t < params.t_end - eps) {
      const double t_next = std::min(params.t_end, k * params.cadence);
      while (state.t < t_next - eps) {
        const double dt = std::min(adaptive_dt(state, params),
                                   t_next - state.t);
        if (!(dt > 1e-14)) throw FlowHalt("time step underflow");
        state = step(state, dt, params.h_floor);
      }
      sample(state);
      ++k;
    }
  } catch (const FlowHalt& halt) {
    trace.halted = true;
    trace.halt_reason = halt.what();
  }
  // the final row keeps NaN residuals (no centered difference available)
  emit_up_to(trace.rows.size());
  trace.final_u = state.surface.u;
  return trace;
}

}  // namespace imcf
