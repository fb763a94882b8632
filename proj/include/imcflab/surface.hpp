#pragma once

#include <span>
#include <utility>
#include <vector>

#include "imcflab/ambient.hpp"
#include "imcflab/grid.hpp"

namespace imcf {

// Star-shaped surface as a radial graph u: S^2 -> (1, inf) over a grid.
struct GraphSurface {
  const SphereGrid* grid = nullptr;
  const AmbientMetric* metric = nullptr;
  std::vector<double> u;
};

// Per-node first/second fundamental data plus integrated scalars of a slice.
struct SliceGeometry {
  // per-node
  std::vector<double> u, u_th, u_ph;
  std::vector<double> h11, h12, h22;     // induced metric
  std::vector<double> i11, i12, i22;     // inverse induced metric
  std::vector<double> A11, A12, A22;     // second fundamental form
  std::vector<double> H;                 // mean curvature
  std::vector<double> norm_A2;           // |A|^2
  std::vector<double> tracefree2;        // |Aring|^2, clamped at 0
  std::vector<double> angle;             // <nu, dr> in (0,1]
  std::vector<double> w;                 // sinh(r) <dr, nu>
  std::vector<double> J;                 // sqrt(det h) / sin(theta)
  // integrated / extremal
  double area = 0, int_H2 = 0, int_tracefree2 = 0;
  double hawking = 0;
  double r_inner = 0, r_outer = 0;
  double min_H = 0, max_H = 0, min_angle = 0;
  double max_tracefree = 0;  // sup |Aring|
  bool h_sign_change = false;
};

SliceGeometry assemble_geometry(const GraphSurface& surface);

// Hawking mass from the integrated quantities:
// A^(1/2)/(16 pi)^(3/2) (16 pi - int (H^2 - 4) dmu)
double hawking_mass(double area, double int_H2);

// (int |Aring|^2 dmu, int |Aring|^2 dmu * A^(1/2))
std::pair<double, double> umbilicity_report(const SliceGeometry& geom);

// area radius rhat with A = 4 pi sinh^2(rhat), and f = u - rhat nodewise
std::pair<double, std::vector<double>> extract_f(const SliceGeometry& geom,
                                                 const GraphSurface& surface);

// (avg e^{2f})^(1/2) * avg e^{-f}, averages over S^2 in the round measure
double limit_functional(std::span<const double> f, const SphereGrid& grid);

// surface Laplacian and squared surface gradient of a scalar field on the
// slice (used by the evolution-residual diagnostics)
std::vector<double> surface_laplacian(const GraphSurface& surface,
                                      const SliceGeometry& geom,
                                      std::span<const double> f);
std::vector<double> surface_grad2(const GraphSurface& surface,
                                  const SliceGeometry& geom,
                                  std::span<const double> f);

// per-node ambient curvature data along the slice: R+6 and Ric(nu,nu)
struct SliceCurvature {
  std::vector<double> r_plus6;
  std::vector<double> ric_nn;
  double int_r_plus6 = 0;
};
SliceCurvature slice_curvature(const GraphSurface& surface,
                               const SliceGeometry& geom);

}  // namespace imcf
