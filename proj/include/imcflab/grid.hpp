#pragma once

#include <span>
#include <vector>

#include "imcflab/types.hpp"

namespace imcf {

// Discretization of S^2: Gauss-Legendre latitudes in x = cos(theta) (no
// nodes at the poles), equispaced longitudes with trapezoid weights.
// n_phi == 1 declares axisymmetric mode. In 2D mode n_phi must be even so
// that every meridian has an across-pole partner.
//
// Node layout is meridian-contiguous: index = j_phi * n_theta + i_theta.
//
// Theta-derivatives are polynomial collocation derivatives applied to the
// even/odd decomposition of a field across the poles. The decomposition
// depends on how the field continues through a pole, which the caller
// declares with a parity tag:
//   Parity::Scalar   - values of a smooth function on the sphere
//                      (u, W, h_ab, H, w, ...)
//   Parity::Covector - values that flip sign under the across-pole map
//                      (theta,phi) -> (-theta, phi+pi), e.g. d_theta of a
//                      scalar, or anything carrying an odd power of
//                      sin(theta)
// d_theta maps Scalar -> Covector and Covector -> Scalar.
enum class Parity { Scalar, Covector };

struct SphereGrid {
  int n_theta = 0;
  int n_phi = 1;
  std::vector<double> x;      // cos(theta_i), descending (theta ascending)
  std::vector<double> theta;  // interior colatitudes
  std::vector<double> sin_th, cos_th;
  std::vector<double> glw;   // Gauss-Legendre weights on x (sum = 2)
  std::vector<double> wq;    // per-node S^2 quadrature weight (sum = 4 pi)
  std::vector<double> phi;   // size n_phi
  double dphi = 0.0;
  // row-major n_theta x n_theta operators
  std::vector<double> Dx;      // d/dx collocation derivative
  std::vector<double> Deven;   // d/dtheta of an even-form (poly in x) field
  std::vector<double> Dodd;    // d/dtheta of an odd-form (sin * poly) field

  static SphereGrid make(int n_theta, int n_phi = 1);

  int nodes() const { return n_theta * n_phi; }
  bool axisymmetric() const { return n_phi == 1; }

  double integrate(std::span<const double> density) const;

  void d_theta(std::span<const double> f, std::span<double> out,
               Parity p) const;
  void d_phi(std::span<const double> f, std::span<double> out) const;
  void d2_phi(std::span<const double> f, std::span<double> out) const;

  // declared accuracy order for convergence tests: phi-difference order in
  // 2D mode; theta collocation is spectral
  static constexpr int kPhiOrder = 4;
};

}  // namespace imcf
