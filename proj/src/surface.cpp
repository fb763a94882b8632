#include "imcflab/surface.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "imcflab/simd.hpp"

namespace imcf {

namespace {

void check_surface(const GraphSurface& s) {
  if (!s.grid || !s.metric) throw GraphError("surface not bound to grid/metric");
  if (static_cast<int>(s.u.size()) != s.grid->nodes())
    throw GraphError("u size does not match grid");
  for (double v : s.u)
    if (!(std::isfinite(v) && v > 1.0))
      throw GraphError("u must be finite and > 1 at all nodes");
}

}  // namespace

double hawking_mass(double area, double int_H2) {
  const double c = std::pow(16 * kPi, 1.5);
  return std::sqrt(area) / c * (16 * kPi - (int_H2 - 4 * area));
}

SliceGeometry assemble_geometry(const GraphSurface& surface) {
  check_surface(surface);
  const SphereGrid& g = *surface.grid;
  const AmbientMetric& metric = *surface.metric;
  const int N = g.nodes(), nth = g.n_theta;
  const bool axi = g.axisymmetric();

  SliceGeometry out;
  out.u = surface.u;
  out.u_th.resize(N);
  out.u_ph.assign(N, 0.0);
  std::vector<double> u_thth(N), u_thph(N, 0.0), u_phph(N, 0.0);
  g.d_theta(out.u, out.u_th, Parity::Scalar);
  g.d_theta(out.u_th, u_thth, Parity::Covector);
  if (!axi) {
    g.d_phi(out.u, out.u_ph);
    g.d_phi(out.u_th, u_thph);
    g.d2_phi(out.u, u_phph);
  }

  auto resize_all = [&](auto&... v) { (v.resize(N), ...); };
  resize_all(out.h11, out.h12, out.h22, out.i11, out.i12, out.i22, out.A11,
             out.A12, out.A22, out.H, out.norm_A2, out.tracefree2, out.angle,
             out.w, out.J);

  out.r_inner = std::numeric_limits<double>::infinity();
  out.r_outer = -out.r_inner;
  out.min_H = out.r_inner;
  out.max_H = out.r_outer;
  out.min_angle = out.r_inner;
  out.max_tracefree = 0.0;

  for (int k = 0; k < N; ++k) {
    const int i = k % nth;
    const double s = g.sin_th[i], c = g.cos_th[i], s2 = s * s;
    const double u = out.u[k], ut = out.u_th[k], up = out.u_ph[k];
    const WarpJet wj = metric.warp(u, g.theta[i]);
    const double W = wj.W, Wr = wj.Wr, Wth = wj.Wth;

    const double h11 = ut * ut + W;
    const double h12 = ut * up;
    const double h22 = up * up + W * s2;
    const double det = h11 * h22 - h12 * h12;
    if (!(std::isfinite(det) && det > 0 && h11 > 0))
      throw GraphError("not an immersed graph");
    out.h11[k] = h11;
    out.h12[k] = h12;
    out.h22[k] = h22;
    out.i11[k] = h22 / det;
    out.i12[k] = -h12 / det;
    out.i22[k] = h11 / det;

    const double Nn = 1.0 / std::sqrt(1.0 + ut * ut / W + up * up / (W * s2));
    out.angle[k] = Nn;
    out.w[k] = std::sinh(u) * Nn;

    // A_ab = -N [ d^2_ab u + (G^0 - ut G^1 - up G^2)(e_a, e_b) ] with the
    // standard outward orientation (H = 2 coth r > 0 on coordinate spheres)
    const double A11 =
        -Nn * (u_thth[k] - ut * ut * Wr / W - Wr / 2 - ut * Wth / (2 * W));
    const double A12 =
        -Nn * (u_thph[k] - ut * up * Wr / W - up * (Wth / (2 * W) + c / s));
    const double A22 =
        -Nn * (u_phph[k] - up * up * Wr / W - Wr * s2 / 2 +
               ut * Wth * s2 / (2 * W) + ut * s * c);
    out.A11[k] = A11;
    out.A12[k] = A12;
    out.A22[k] = A22;

    const double i11 = out.i11[k], i12 = out.i12[k], i22 = out.i22[k];
    const double H = i11 * A11 + 2 * i12 * A12 + i22 * A22;
    // |A|^2 = tr of (h^{-1} A)^2
    const double B11 = i11 * A11 + i12 * A12;
    const double B12 = i11 * A12 + i12 * A22;
    const double B21 = i12 * A11 + i22 * A12;
    const double B22 = i12 * A12 + i22 * A22;
    const double nA2 = B11 * B11 + 2 * B12 * B21 + B22 * B22;
    out.H[k] = H;
    out.norm_A2[k] = nA2;
    out.tracefree2[k] = std::max(nA2 - H * H / 2, 0.0);
    out.J[k] = std::sqrt(det) / s;

    out.r_inner = std::min(out.r_inner, u);
    out.r_outer = std::max(out.r_outer, u);
    out.min_H = std::min(out.min_H, H);
    out.max_H = std::max(out.max_H, H);
    out.min_angle = std::min(out.min_angle, Nn);
    out.max_tracefree =
        std::max(out.max_tracefree, std::sqrt(out.tracefree2[k]));
  }
  out.h_sign_change = out.min_H < 0 && out.max_H > 0;

  out.area = g.integrate(out.J);
  std::vector<double> tmp(N);
  for (int k = 0; k < N; ++k) tmp[k] = out.J[k] * out.H[k];
  out.int_H2 = simd::dot3(g.wq.data(), tmp.data(), out.H.data(), N);
  out.int_tracefree2 =
      simd::dot3(g.wq.data(), out.J.data(), out.tracefree2.data(), N);
  out.hawking = hawking_mass(out.area, out.int_H2);
  return out;
}

std::pair<double, double> umbilicity_report(const SliceGeometry& geom) {
  return {geom.int_tracefree2, geom.int_tracefree2 * std::sqrt(geom.area)};
}

std::pair<double, std::vector<double>> extract_f(const SliceGeometry& geom,
                                                 const GraphSurface& surface) {
  if (!(geom.area > 0)) throw GraphError("extract_f: area must be positive");
  const double rhat = std::asinh(std::sqrt(geom.area / (4 * kPi)));
  std::vector<double> f(surface.u.size());
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = surface.u[k] - rhat;
  return {rhat, std::move(f)};
}

double limit_functional(std::span<const double> f, const SphereGrid& grid) {
  std::vector<double> e2(f.size()), em(f.size());
  for (std::size_t k = 0; k < f.size(); ++k) {
    e2[k] = std::exp(2 * f[k]);
    em[k] = std::exp(-f[k]);
  }
  const double a2 = grid.integrate(e2) / (4 * kPi);
  const double am = grid.integrate(em) / (4 * kPi);
  return std::sqrt(a2) * am;
}

std::vector<double> surface_laplacian(const GraphSurface& surface,
                                      const SliceGeometry& geom,
                                      std::span<const double> f) {
  const SphereGrid& g = *surface.grid;
  const int N = g.nodes(), nth = g.n_theta;
  std::vector<double> fth(N), fph(N, 0.0), FA(N), FB(N), dFA(N), dFB(N, 0.0);
  g.d_theta(f, fth, Parity::Scalar);
  if (!g.axisymmetric()) g.d_phi(f, fph);
  for (int k = 0; k < N; ++k) {
    const double sj = g.sin_th[k % nth] * geom.J[k];  // sqrt(det h)
    FA[k] = sj * (geom.i11[k] * fth[k] + geom.i12[k] * fph[k]);
    FB[k] = sj * (geom.i12[k] * fth[k] + geom.i22[k] * fph[k]);
  }
  // FA carries two odd factors (sqrt(det h) and f_theta): scalar parity
  g.d_theta(FA, dFA, Parity::Scalar);
  if (!g.axisymmetric()) g.d_phi(FB, dFB);
  std::vector<double> out(N);
  for (int k = 0; k < N; ++k)
    out[k] = (dFA[k] + dFB[k]) / (g.sin_th[k % nth] * geom.J[k]);
  return out;
}

std::vector<double> surface_grad2(const GraphSurface& surface,
                                  const SliceGeometry& geom,
                                  std::span<const double> f) {
  const SphereGrid& g = *surface.grid;
  const int N = g.nodes();
  std::vector<double> fth(N), fph(N, 0.0);
  g.d_theta(f, fth, Parity::Scalar);
  if (!g.axisymmetric()) g.d_phi(f, fph);
  std::vector<double> out(N);
  for (int k = 0; k < N; ++k)
    out[k] = geom.i11[k] * fth[k] * fth[k] +
             2 * geom.i12[k] * fth[k] * fph[k] +
             geom.i22[k] * fph[k] * fph[k];
  return out;
}

SliceCurvature slice_curvature(const GraphSurface& surface,
                               const SliceGeometry& geom) {
  const SphereGrid& g = *surface.grid;
  const AmbientMetric& metric = *surface.metric;
  const int N = g.nodes(), nth = g.n_theta;
  SliceCurvature out;
  out.r_plus6.resize(N);
  out.ric_nn.resize(N);
  for (int k = 0; k < N; ++k) {
    const int i = k % nth;
    const double s = g.sin_th[i], s2 = s * s;
    const Point p{geom.u[k], g.theta[i], g.phi[k / nth]};
    const CurvatureData cd = metric.curvature(p);
    out.r_plus6[k] = cd.scalar + 6.0;
    const WarpJet wj = metric.warp(p.r, p.theta);
    const double Nn = geom.angle[k];
    const double nu_r = Nn;
    const double nu_th = -Nn * geom.u_th[k] / wj.W;
    const double nu_ph = -Nn * geom.u_ph[k] / (wj.W * s2);
    const double nu[3] = {nu_r, nu_th, nu_ph};
    double val = 0.0;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) val += cd.ricci[a][b] * nu[a] * nu[b];
    out.ric_nn[k] = val;
  }
  std::vector<double> tmp(N);
  for (int k = 0; k < N; ++k) tmp[k] = geom.J[k] * out.r_plus6[k];
  out.int_r_plus6 = g.integrate(tmp);
  return out;
}

}  // namespace imcf
