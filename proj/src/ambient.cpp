#include "imcflab/ambient.hpp"

#include <cmath>

namespace imcf {

namespace {

constexpr double kRMin = 0.1;

// Pointwise Christoffels and their (r,theta)-derivatives for
// g = dr^2 + W(r,theta)(d theta^2 + sin^2 theta d phi^2).
// Nonzero components (indices 0=r, 1=theta, 2=phi):
//   G^0_11 = -Wr/2            G^0_22 = -Wr s^2/2
//   G^1_01 = Wr/(2W)          G^1_11 = Wth/(2W)
//   G^1_22 = -Wth s^2/(2W) - s c
//   G^2_02 = Wr/(2W)          G^2_12 = Wth/(2W) + c/s
struct ChrisJet {
  Chris3 G{};
  std::array<Chris3, 2> dG{};  // derivative index: 0 = d/dr, 1 = d/dtheta
};

ChrisJet christoffel_jet(const WarpJet& w, double s, double c) {
  ChrisJet out{};
  const double W = w.W, Wr = w.Wr, Wth = w.Wth;
  const double W2 = W * W;
  const double u = Wr / (2 * W);
  const double v = Wth / (2 * W);
  const double ur = (w.Wrr * W - Wr * Wr) / (2 * W2);
  const double uth = (w.Wrth * W - Wr * Wth) / (2 * W2);
  const double vr = uth;  // d/dr [Wth/2W] = (Wrth W - Wth Wr)/(2W^2)
  const double vth = (w.Wthth * W - Wth * Wth) / (2 * W2);
  const double s2 = s * s;

  auto set = [](Chris3& g, int i, int j, int k, double val) {
    g[i][j][k] = val;
    g[i][k][j] = val;
  };

  set(out.G, 0, 1, 1, -Wr / 2);
  set(out.G, 0, 2, 2, -Wr * s2 / 2);
  set(out.G, 1, 0, 1, u);
  set(out.G, 1, 1, 1, v);
  set(out.G, 1, 2, 2, -v * s2 - s * c);
  set(out.G, 2, 0, 2, u);
  set(out.G, 2, 1, 2, v + c / s);

  set(out.dG[0], 0, 1, 1, -w.Wrr / 2);
  set(out.dG[0], 0, 2, 2, -w.Wrr * s2 / 2);
  set(out.dG[0], 1, 0, 1, ur);
  set(out.dG[0], 1, 1, 1, vr);
  set(out.dG[0], 1, 2, 2, -vr * s2);
  set(out.dG[0], 2, 0, 2, ur);
  set(out.dG[0], 2, 1, 2, vr);

  set(out.dG[1], 0, 1, 1, -w.Wrth / 2);
  set(out.dG[1], 0, 2, 2, -w.Wrth * s2 / 2 - Wr * s * c);
  set(out.dG[1], 1, 0, 1, uth);
  set(out.dG[1], 1, 1, 1, vth);
  set(out.dG[1], 1, 2, 2, -vth * s2 - 2 * v * s * c - (c * c - s2));
  set(out.dG[1], 2, 0, 2, uth);
  set(out.dG[1], 2, 1, 2, vth - 1 / s2);
  return out;
}

}  // namespace

LegendreEval legendre_sum(const std::vector<double>& coeff, double x) {
  // P_k via the three-term recurrence, together with d/dx and d^2/dx^2.
  double pm1 = 1.0, pm2 = 0.0;    // P_0, P_{-1}
  double dm1 = 0.0, dm2 = 0.0;    // P'_0
  double ddm1 = 0.0, ddm2 = 0.0;  // P''_0
  LegendreEval out{0, 0, 0};
  if (!coeff.empty()) {
    out.p += coeff[0] * pm1;
  }
  for (std::size_t k = 1; k < coeff.size(); ++k) {
    const double kk = static_cast<double>(k);
    const double a = (2 * kk - 1) / kk, b = (kk - 1) / kk;
    const double p = a * x * pm1 - b * pm2;
    const double dp = a * (pm1 + x * dm1) - b * dm2;
    const double ddp = a * (2 * dm1 + x * ddm1) - b * ddm2;
    out.p += coeff[k] * p;
    out.dp += coeff[k] * dp;
    out.ddp += coeff[k] * ddp;
    pm2 = pm1; pm1 = p;
    dm2 = dm1; dm1 = dp;
    ddm2 = ddm1; ddm1 = ddp;
  }
  return out;
}

AmbientMetric::AmbientMetric(Family f, double m, std::optional<QSpec> q)
    : family_(f), mass_(m), q_(std::move(q)) {
  if (mass_ < 0) throw MetricError("mass must be >= 0");
  if (q_) {
    double c1 = 0;
    for (double c : q_->modes) c1 += std::abs(c);
    q_norm_ = q_->amplitude / (std::sqrt(2.0) * std::max(1.0, c1));
    if (q_->decay_rate < 3)
      throw MetricError("QSpec decay_rate must be >= 3");
  }
}

AmbientMetric AmbientMetric::hyperbolic() {
  return AmbientMetric(Family::Hyperbolic, 0.0, std::nullopt);
}

AmbientMetric AmbientMetric::ads_schwarzschild(double mass) {
  if (mass <= 0) throw MetricError("AdS-Schwarzschild requires mass > 0");
  return AmbientMetric(Family::AdsSchwarzschild, mass, std::nullopt);
}

AmbientMetric AmbientMetric::perturbed(double mass, QSpec q) {
  return AmbientMetric(Family::Perturbed, mass, std::move(q));
}

void AmbientMetric::check_point(double r) const {
  if (!(r > kRMin))
    throw MetricError("point rejected: r <= " + std::to_string(kRMin));
}

WarpJet AmbientMetric::warp(double r, double theta) const {
  check_point(r);
  const double sh = std::sinh(r), ch = std::cosh(r);
  WarpJet w{};
  w.W = sh * sh;
  w.Wr = 2 * sh * ch;
  w.Wrr = 2 * (ch * ch + sh * sh);
  if (mass_ > 0) {
    const double csch = 1 / sh, coth = ch / sh;
    w.W += mass_ / 3 * csch;
    w.Wr -= mass_ / 3 * csch * coth;
    w.Wrr += mass_ / 3 * (csch * coth * coth + csch * csch * csch);
  }
  if (q_ && q_norm_ != 0.0) {
    const double x = std::cos(theta), s = std::sin(theta);
    const LegendreEval P = legendre_sum(q_->modes, x);
    const double alpha = q_->decay_rate;
    const double e = q_norm_ * std::exp(-alpha * r);
    const double q = e * P.p;          // q(r,theta)
    const double qr = -alpha * q;
    const double qrr = alpha * alpha * q;
    const double qth = -s * e * P.dp;  // d/dtheta
    const double qthth = s * s * e * P.ddp - x * e * P.dp;
    const double qrth = -alpha * qth;
    const double p = sh * sh, pr = 2 * sh * ch, prr = 2 * (ch * ch + sh * sh);
    w.W += q * p;
    w.Wr += qr * p + q * pr;
    w.Wth += qth * p;
    w.Wrr += qrr * p + 2 * qr * pr + q * prr;
    w.Wrth += qrth * p + qth * pr;
    w.Wthth += qthth * p;
  }
  if (!(std::isfinite(w.W) && w.W > 0))
    throw MetricError("point rejected: non-finite or non-positive warp");
  return w;
}

Mat3 AmbientMetric::metric(const Point& p) const {
  const WarpJet w = warp(p.r, p.theta);
  const double s = std::sin(p.theta);
  Mat3 g{};
  g[0][0] = 1.0;
  g[1][1] = w.W;
  g[2][2] = w.W * s * s;
  if (!(std::isfinite(g[1][1]) && std::isfinite(g[2][2])))
    throw MetricError("point rejected: non-finite metric");
  return g;
}

Chris3 AmbientMetric::christoffels(const Point& p) const {
  const WarpJet w = warp(p.r, p.theta);
  return christoffel_jet(w, std::sin(p.theta), std::cos(p.theta)).G;
}

CurvatureData AmbientMetric::curvature(const Point& p) const {
  const WarpJet w = warp(p.r, p.theta);
  const double s = std::sin(p.theta), c = std::cos(p.theta);
  const ChrisJet cj = christoffel_jet(w, s, c);

  CurvatureData out{};
  // R^i_{jkl} = d_k G^i_{lj} - d_l G^i_{kj} + G^i_{km} G^m_{lj} - G^i_{lm} G^m_{kj}
  // only d_r, d_theta are nonzero (metric is phi-independent)
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          double v = 0.0;
          if (k < 2) v += cj.dG[k][i][l][j];
          if (l < 2) v -= cj.dG[l][i][k][j];
          for (int m = 0; m < 3; ++m)
            v += cj.G[i][k][m] * cj.G[m][l][j] -
                 cj.G[i][l][m] * cj.G[m][k][j];
          out.riemann[i][j][k][l] = v;
        }

  for (int j = 0; j < 3; ++j)
    for (int l = 0; l < 3; ++l) {
      double v = 0.0;
      for (int i = 0; i < 3; ++i) v += out.riemann[i][j][i][l];
      out.ricci[j][l] = v;
    }

  const double ginv[3] = {1.0, 1 / w.W, 1 / (w.W * s * s)};
  out.scalar =
      ginv[0] * out.ricci[0][0] + ginv[1] * out.ricci[1][1] +
      ginv[2] * out.ricci[2][2];
  return out;
}

double AmbientMetric::coordinate_sphere_mean_curvature(double r) const {
  if (family_ == Family::Perturbed)
    throw MetricError("coordinate_sphere_mean_curvature: no closed form for "
                      "perturbed family");
  const WarpJet w = warp(r, kPi / 2);
  return w.Wr / w.W;  // = 2 lambda'/lambda with W = lambda^2
}

double AmbientMetric::sphere_hawking_mass(double rho) const {
  if (family_ == Family::Perturbed)
    throw MetricError("sphere_hawking_mass: no closed form for perturbed "
                      "family");
  const WarpJet w = warp(rho, kPi / 2);
  const double lam = std::sqrt(w.W);
  const double lamp2 = w.Wr * w.Wr / (4 * w.W);
  return lam / 2 * (1 + w.W - lamp2);
}

}  // namespace imcf
