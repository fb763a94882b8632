#pragma once

#include <optional>
#include <vector>

#include "imcflab/types.hpp"

namespace imcf {

enum class Family { Hyperbolic, AdsSchwarzschild, Perturbed };

// Angular perturbation acting on the angular block only, preserving the
// polar gauge g_rr = 1:
//   Q = q(r,theta) * sinh^2(r) * g_{S^2},
//   q = amplitude / (sqrt(2) max(1, sum|c_k|)) * exp(-decay_rate r)
//       * sum_k c_k P_k(cos theta),
// which gives |Q|_gbar <= amplitude * exp(-decay_rate r) by construction.
struct QSpec {
  double amplitude = 0.0;
  double decay_rate = 3.0;
  std::vector<double> modes;  // Legendre coefficients c_0, c_1, ...
};

// Value and partial derivatives of the angular warp factor W(r,theta),
// where the metric is g = dr^2 + W(r,theta) g_{S^2}.
struct WarpJet {
  double W, Wr, Wth, Wrr, Wrth, Wthth;
};

struct CurvatureData {
  Riem3 riemann;  // R^i_{jkl}
  Mat3 ricci;
  double scalar;
};

// Legendre polynomial sum and its first two derivatives in x = cos(theta).
struct LegendreEval {
  double p, dp, ddp;
};
LegendreEval legendre_sum(const std::vector<double>& coeff, double x);

class AmbientMetric {
 public:
  static AmbientMetric hyperbolic();
  static AmbientMetric ads_schwarzschild(double mass);
  // base family is hyperbolic when mass == 0, AdS-Schwarzschild otherwise
  static AmbientMetric perturbed(double mass, QSpec q);

  Family family() const { return family_; }
  double mass() const { return mass_; }
  const std::optional<QSpec>& perturbation() const { return q_; }

  WarpJet warp(double r, double theta) const;

  Mat3 metric(const Point& p) const;
  Chris3 christoffels(const Point& p) const;
  CurvatureData curvature(const Point& p) const;

  // 2 lambda'(r)/lambda(r) for the unperturbed warped-product families;
  // rejects Perturbed (no closed form).
  double coordinate_sphere_mean_curvature(double r) const;

  // closed-form Hawking mass of the coordinate sphere {r = rho}:
  // (lambda/2)(1 + lambda^2 - lambda'^2); unperturbed families only.
  double sphere_hawking_mass(double rho) const;

 private:
  AmbientMetric(Family f, double m, std::optional<QSpec> q);
  void check_point(double r) const;

  Family family_;
  double mass_ = 0.0;
  std::optional<QSpec> q_;
  double q_norm_ = 0.0;  // amplitude / (sqrt(2) max(1, sum|c_k|))
};

}  // namespace imcf
