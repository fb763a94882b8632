#include "imcflab/grid.hpp"

#include <cmath>

#include "imcflab/simd.hpp"

namespace imcf {

namespace {

// Legendre P_n and derivative at x (for node finding)
std::pair<double, double> legendre_pn(int n, double x) {
  double pm1 = x, pm2 = 1.0;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double p = ((2 * k - 1) * x * pm1 - (k - 1) * pm2) / k;
    pm2 = pm1;
    pm1 = p;
  }
  const double dp = n * (x * pm1 - pm2) / (x * x - 1.0);
  return {pm1, dp};
}

}  // namespace

SphereGrid SphereGrid::make(int n_theta, int n_phi) {
  if (n_theta < 16) throw GridError("n_theta must be >= 16");
  if (n_phi != 1 && (n_phi < 8 || n_phi % 2 != 0))
    throw GridError("n_phi must be 1 (axisymmetric) or even and >= 8");

  SphereGrid g;
  g.n_theta = n_theta;
  g.n_phi = n_phi;
  const int n = n_theta;
  g.x.resize(n);
  g.glw.resize(n);

  // Gauss-Legendre nodes by Newton iteration; x stored descending so theta
  // ascends
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      auto [p, dp] = legendre_pn(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    auto [p, dp] = legendre_pn(n, x);
    (void)p;
    g.x[i] = x;
    g.glw[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }

  g.theta.resize(n);
  g.sin_th.resize(n);
  g.cos_th.resize(n);
  for (int i = 0; i < n; ++i) {
    g.theta[i] = std::acos(g.x[i]);
    g.sin_th[i] = std::sin(g.theta[i]);
    g.cos_th[i] = g.x[i];
  }

  // barycentric collocation derivative on the x nodes
  std::vector<double> lam(n, 1.0);
  for (int i = 0; i < n; ++i) {
    double prod = 1.0;
    for (int j = 0; j < n; ++j)
      if (j != i) prod *= (g.x[i] - g.x[j]);
    lam[i] = 1.0 / prod;
  }
  g.Dx.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    double diag = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double d = (lam[j] / lam[i]) / (g.x[i] - g.x[j]);
      g.Dx[static_cast<std::size_t>(i) * n + j] = d;
      diag -= d;
    }
    g.Dx[static_cast<std::size_t>(i) * n + i] = diag;
  }

  // Deven = -diag(s) Dx ; Dodd = (diag(c) - diag(s^2) Dx) diag(1/s)
  g.Deven.resize(g.Dx.size());
  g.Dodd.resize(g.Dx.size());
  for (int i = 0; i < n; ++i) {
    const double s = g.sin_th[i], c = g.cos_th[i], s2 = s * s;
    for (int j = 0; j < n; ++j) {
      const std::size_t ij = static_cast<std::size_t>(i) * n + j;
      g.Deven[ij] = -s * g.Dx[ij];
      g.Dodd[ij] = (-s2 * g.Dx[ij] + (i == j ? c : 0.0)) / g.sin_th[j];
    }
  }

  g.phi.resize(n_phi);
  g.dphi = 2 * kPi / n_phi;
  for (int j = 0; j < n_phi; ++j) g.phi[j] = j * g.dphi;

  g.wq.resize(g.nodes());
  const double wphi = 2 * kPi / n_phi;
  for (int j = 0; j < n_phi; ++j)
    for (int i = 0; i < n; ++i) g.wq[j * n + i] = g.glw[i] * wphi;
  return g;
}

double SphereGrid::integrate(std::span<const double> density) const {
  return simd::dot(wq.data(), density.data(), wq.size());
}

void SphereGrid::d_theta(std::span<const double> f, std::span<double> out,
                         Parity p) const {
  const int n = n_theta;
  if (axisymmetric()) {
    // axisymmetric scalars are even-form, covector components odd-form
    const auto& M = (p == Parity::Scalar) ? Deven : Dodd;
    simd::matvec(M.data(), f.data(), out.data(), n, n);
    return;
  }
  std::vector<double> E(n), O(n), dE(n), dO(n);
  const int half = n_phi / 2;
  for (int j = 0; j < half; ++j) {
    const double* fj = f.data() + static_cast<std::size_t>(j) * n;
    const double* fp = f.data() + static_cast<std::size_t>(j + half) * n;
    const double sgn = (p == Parity::Scalar) ? 1.0 : -1.0;
    for (int i = 0; i < n; ++i) {
      E[i] = 0.5 * (fj[i] + sgn * fp[i]);
      O[i] = 0.5 * (fj[i] - sgn * fp[i]);
    }
    simd::matvec(Deven.data(), E.data(), dE.data(), n, n);
    simd::matvec(Dodd.data(), O.data(), dO.data(), n, n);
    double* oj = out.data() + static_cast<std::size_t>(j) * n;
    double* op = out.data() + static_cast<std::size_t>(j + half) * n;
    for (int i = 0; i < n; ++i) {
      oj[i] = dE[i] + dO[i];
      op[i] = sgn * (dE[i] - dO[i]);
    }
  }
}

void SphereGrid::d_phi(std::span<const double> f, std::span<double> out) const {
  const int n = n_theta, P = n_phi;
  if (P == 1) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  const double inv = 1.0 / (12.0 * dphi);
  for (int j = 0; j < P; ++j) {
    const double* m2 = f.data() + static_cast<std::size_t>((j + P - 2) % P) * n;
    const double* m1 = f.data() + static_cast<std::size_t>((j + P - 1) % P) * n;
    const double* p1 = f.data() + static_cast<std::size_t>((j + 1) % P) * n;
    const double* p2 = f.data() + static_cast<std::size_t>((j + 2) % P) * n;
    double* o = out.data() + static_cast<std::size_t>(j) * n;
    for (int i = 0; i < n; ++i)
      o[i] = (m2[i] - 8 * m1[i] + 8 * p1[i] - p2[i]) * inv;
  }
}

void SphereGrid::d2_phi(std::span<const double> f,
                        std::span<double> out) const {
  const int n = n_theta, P = n_phi;
  if (P == 1) {
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  const double inv = 1.0 / (12.0 * dphi * dphi);
  for (int j = 0; j < P; ++j) {
    const double* m2 = f.data() + static_cast<std::size_t>((j + P - 2) % P) * n;
    const double* m1 = f.data() + static_cast<std::size_t>((j + P - 1) % P) * n;
    const double* c0 = f.data() + static_cast<std::size_t>(j) * n;
    const double* p1 = f.data() + static_cast<std::size_t>((j + 1) % P) * n;
    const double* p2 = f.data() + static_cast<std::size_t>((j + 2) % P) * n;
    double* o = out.data() + static_cast<std::size_t>(j) * n;
    for (int i = 0; i < n; ++i)
      o[i] = (-m2[i] + 16 * m1[i] - 30 * c0[i] + 16 * p1[i] - p2[i]) * inv;
  }
}

}  // namespace imcf
