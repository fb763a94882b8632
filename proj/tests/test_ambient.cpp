#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "imcflab/ambient.hpp"

using namespace imcf;

namespace {

// finite-difference Christoffels from eval_metric only (test oracle,
// independent of the analytic production path)
Chris3 fd_christoffels(const AmbientMetric& m, const Point& p, double h) {
  auto gat = [&](double r, double th) { return m.metric({r, th, p.phi}); };
  const Mat3 g0 = gat(p.r, p.theta);
  // dg[c][i][j], c = 0 (r), 1 (theta); phi-derivatives vanish
  Mat3 dg[3];
  auto diff = [&](Mat3 pl, Mat3 mi) {
    Mat3 d{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) d[i][j] = (pl[i][j] - mi[i][j]) / (2 * h);
    return d;
  };
  dg[0] = diff(gat(p.r + h, p.theta), gat(p.r - h, p.theta));
  dg[1] = diff(gat(p.r, p.theta + h), gat(p.r, p.theta - h));
  dg[2] = Mat3{};
  Mat3 ginv{};
  ginv[0][0] = 1.0 / g0[0][0];
  ginv[1][1] = 1.0 / g0[1][1];
  ginv[2][2] = 1.0 / g0[2][2];
  Chris3 G{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        double v = 0;
        for (int l = 0; l < 3; ++l)
          v += 0.5 * ginv[i][l] * (dg[j][l][k] + dg[k][l][j] - dg[l][j][k]);
        G[i][j][k] = v;
      }
  return G;
}

double max_chris_diff(const Chris3& a, const Chris3& b) {
  double m = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        m = std::max(m, std::abs(a[i][j][k] - b[i][j][k]));
  return m;
}

// curvature oracle built purely from eval_metric: 4th-order differences of
// the fd Christoffels
CurvatureData fd_curvature(const AmbientMetric& m, const Point& p, double h) {
  auto chris = [&](double r, double th) {
    return fd_christoffels(m, {r, th, p.phi}, h);
  };
  const Chris3 G = chris(p.r, p.theta);
  Chris3 dG[2];
  auto diff4 = [&](Chris3 p2, Chris3 p1, Chris3 m1, Chris3 m2) {
    Chris3 d{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          d[i][j][k] = (-p2[i][j][k] + 8 * p1[i][j][k] - 8 * m1[i][j][k] +
                        m2[i][j][k]) /
                       (12 * h);
    return d;
  };
  dG[0] = diff4(chris(p.r + 2 * h, p.theta), chris(p.r + h, p.theta),
                chris(p.r - h, p.theta), chris(p.r - 2 * h, p.theta));
  dG[1] = diff4(chris(p.r, p.theta + 2 * h), chris(p.r, p.theta + h),
                chris(p.r, p.theta - h), chris(p.r, p.theta - 2 * h));
  CurvatureData out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          double v = 0;
          if (k < 2) v += dG[k][i][l][j];
          if (l < 2) v -= dG[l][i][k][j];
          for (int mm = 0; mm < 3; ++mm)
            v += G[i][k][mm] * G[mm][l][j] - G[i][l][mm] * G[mm][k][j];
          out.riemann[i][j][k][l] = v;
        }
  for (int j = 0; j < 3; ++j)
    for (int l = 0; l < 3; ++l) {
      double v = 0;
      for (int i = 0; i < 3; ++i) v += out.riemann[i][j][i][l];
      out.ricci[j][l] = v;
    }
  const Mat3 g = m.metric(p);
  out.scalar = out.ricci[0][0] / g[0][0] + out.ricci[1][1] / g[1][1] +
               out.ricci[2][2] / g[2][2];
  return out;
}

}  // namespace

TEST_CASE("eval_metric closed forms") {
  const auto hyp = AmbientMetric::hyperbolic();
  const Mat3 g = hyp.metric({1.0, kPi / 2, 0.0});
  const double sh2 = std::sinh(1.0) * std::sinh(1.0);
  CHECK(g[0][0] == 1.0);
  CHECK(g[0][1] == 0.0);
  CHECK(g[0][2] == 0.0);
  CHECK(g[1][1] == doctest::Approx(sh2).epsilon(1e-14));
  CHECK(g[2][2] == doctest::Approx(sh2).epsilon(1e-14));  // sin(pi/2) = 1

  const auto ads = AmbientMetric::ads_schwarzschild(2.0);
  for (double r : {2.0, 3.0, 5.0}) {
    const Mat3 ga = ads.metric({r, 0.7, 0.3});
    const double expect = std::sinh(r) * std::sinh(r) + 2.0 / (3 * std::sinh(r));
    CHECK(ga[1][1] == doctest::Approx(expect).epsilon(1e-14));
    CHECK(ga[2][2] ==
          doctest::Approx(expect * std::sin(0.7) * std::sin(0.7)).epsilon(1e-14));
  }
}

TEST_CASE("zero-amplitude perturbation equals its base family") {
  const QSpec q{0.0, 3.0, {0.0, 1.0}};
  const auto pert0 = AmbientMetric::perturbed(0.0, q);
  const auto hyp = AmbientMetric::hyperbolic();
  const auto pert2 = AmbientMetric::perturbed(2.0, QSpec{0.0, 5.0, {1.0}});
  const auto ads = AmbientMetric::ads_schwarzschild(2.0);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> rr(0.5, 6.0), rt(0.05, kPi - 0.05);
  for (int i = 0; i < 50; ++i) {
    const Point p{rr(rng), rt(rng), 0.0};
    CHECK(pert0.metric(p)[1][1] == hyp.metric(p)[1][1]);
    CHECK(pert2.metric(p)[1][1] == ads.metric(p)[1][1]);
  }
}

TEST_CASE("perturbation decays linearly in amplitude and respects the bound") {
  const auto hyp = AmbientMetric::hyperbolic();
  const Point p{2.0, 1.1, 0.0};
  const double base = hyp.metric(p)[1][1];
  double prev = 0;
  for (double amp : {0.2, 0.1, 0.05}) {
    const auto m = AmbientMetric::perturbed(0.0, QSpec{amp, 3.0, {0.5, 1.0, 0.25}});
    const double diff = std::abs(m.metric(p)[1][1] - base);
    if (prev > 0) CHECK(prev / diff == doctest::Approx(2.0).epsilon(1e-6));
    prev = diff;
  }
  // |Q|_gbar <= amplitude e^{-alpha r}: Q acts conformally on the angular
  // block, |Q|_gbar = sqrt(2) |q|
  const auto m = AmbientMetric::perturbed(0.0, QSpec{0.3, 3.0, {1.0, -0.5}});
  for (double r : {1.0, 2.0, 4.0}) {
    for (double th : {0.1, 0.9, 2.2}) {
      const double q =
          (m.metric({r, th, 0}) [1][1] - hyp.metric({r, th, 0})[1][1]) /
          (std::sinh(r) * std::sinh(r));
      CHECK(std::sqrt(2.0) * std::abs(q) <= 0.3 * std::exp(-3.0 * r) + 1e-15);
    }
  }
}

TEST_CASE("christoffels against the finite-difference oracle") {
  const auto hyp = AmbientMetric::hyperbolic();
  const Point p1{1.0, 1.2, 0.4};
  const Chris3 G = hyp.christoffels(p1);
  // named closed forms, fd oracle at step 1e-5 agrees to 1e-8
  CHECK(std::abs(G[0][1][1] + std::sinh(1.0) * std::cosh(1.0)) < 1e-12);
  CHECK(std::abs(G[1][0][1] - std::cosh(1.0) / std::sinh(1.0)) < 1e-12);
  const Chris3 Gfd = fd_christoffels(hyp, p1, 1e-5);
  CHECK(std::abs(Gfd[0][1][1] + std::sinh(1.0) * std::cosh(1.0)) < 1e-8);
  CHECK(std::abs(Gfd[1][0][1] - std::cosh(1.0) / std::sinh(1.0)) < 1e-8);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> rr(0.8, 4.0), rt(0.2, kPi - 0.2);
  const auto ads = AmbientMetric::ads_schwarzschild(1.5);
  const auto pert =
      AmbientMetric::perturbed(0.0, QSpec{0.1, 3.0, {0.3, 0.8, 0.4}});
  for (const AmbientMetric* m : {&hyp, &ads, &pert}) {
    for (int it = 0; it < 12; ++it) {
      const Point p{rr(rng), rt(rng), 0.0};
      const Chris3 Ga = m->christoffels(p);
      // torsion-free symmetry
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k) CHECK(Ga[i][j][k] == Ga[i][k][j]);
      // second-order convergence of the oracle toward the analytic value
      const double e1 = max_chris_diff(fd_christoffels(*m, p, 1e-3), Ga);
      const double e2 = max_chris_diff(fd_christoffels(*m, p, 5e-4), Ga);
      const double ratio = e1 / e2;
      CHECK(ratio > 3.5);
      CHECK(ratio < 4.5);
      // relative agreement at the spec's step
      double scale = 1.0;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k)
            scale = std::max(scale, std::abs(Ga[i][j][k]));
      CHECK(max_chris_diff(fd_christoffels(*m, p, 1e-5), Ga) / scale < 1e-8);
    }
  }
}

TEST_CASE("hyperbolic curvature: R = -6, Ric = -2g, sectional -1") {
  const auto hyp = AmbientMetric::hyperbolic();
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> rr(0.5, 6.0), rt(0.1, kPi - 0.1);
  for (int i = 0; i < 100; ++i) {
    const Point p{rr(rng), rt(rng), 1.0};
    const CurvatureData c = hyp.curvature(p);
    CHECK(std::abs(c.scalar + 6.0) < 1e-10);
    const Mat3 g = hyp.metric(p);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        CHECK(std::abs(c.ricci[a][b] + 2.0 * g[a][b]) <
              1e-10 * std::max(1.0, std::abs(g[a][b])));
    // sectional curvature of each coordinate 2-plane
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) {
        double lowered = 0;  // R_{abab} = g_{ai} R^i_{bab}
        for (int i = 0; i < 3; ++i) lowered += g[a][i] * c.riemann[i][b][a][b];
        const double denom = g[a][a] * g[b][b];
        CHECK(lowered / denom == doctest::Approx(-1.0).epsilon(1e-10));
      }
  }
}

TEST_CASE("analytic curvature matches the finite-difference oracle") {
  const auto ads = AmbientMetric::ads_schwarzschild(2.0);
  const auto pert =
      AmbientMetric::perturbed(0.0, QSpec{0.1, 3.0, {0.2, 0.7, 0.5}});
  for (const AmbientMetric* m : {&ads, &pert}) {
    for (const Point p : {Point{1.5, 0.8, 0}, Point{2.5, 2.0, 0}}) {
      const CurvatureData a = m->curvature(p);
      const CurvatureData o = fd_curvature(*m, p, 1e-3);
      CHECK(std::abs(a.scalar - o.scalar) < 1e-5 * std::abs(a.scalar));
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          CHECK(std::abs(a.ricci[i][j] - o.ricci[i][j]) <
                1e-5 * std::max(1.0, std::abs(a.ricci[i][j])));
    }
  }
}

TEST_CASE("AdS-Schwarzschild R+6 decays like e^{-5r}") {
  // measured constant: |R+6| e^{5r} -> 256 m / 3 (~170.7 for m = 2); the
  // r = 7 sample sits near the double-precision floor of R itself, so the
  // recorded bound has headroom
  const auto ads = AmbientMetric::ads_schwarzschild(2.0);
  const double cap = 400.0;
  for (double r : {4.0, 5.0, 6.0, 7.0}) {
    const double rp6 = ads.curvature({r, 1.0, 0}).scalar + 6.0;
    const double kappa = std::abs(rp6) * std::exp(5 * r);
    CHECK(std::isfinite(kappa));
    CHECK(kappa < cap);
  }
  // away from the roundoff floor the constant is resolved
  const double k4 =
      std::abs(ads.curvature({4.0, 1.0, 0}).scalar + 6.0) * std::exp(20.0);
  CHECK(k4 == doctest::Approx(256.0 * 2 / 3).epsilon(0.02));
}

TEST_CASE("perturbed family satisfies the scalar-curvature decay hypothesis") {
  // |R+6| e^{alpha r} stays bounded by its value near r = 4
  const double alpha = 3.0;
  const auto m = AmbientMetric::perturbed(0.0, QSpec{0.05, alpha, {0.0, 0.0, 1.0}});
  const double k0 =
      std::abs(m.curvature({4.0, 1.1, 0}).scalar + 6.0) * std::exp(alpha * 4.0);
  for (double r = 4.0; r <= 8.0; r += 0.5) {
    const double k =
        std::abs(m.curvature({r, 1.1, 0}).scalar + 6.0) * std::exp(alpha * r);
    CHECK(k <= 1.05 * k0 + 1e-9);
  }
}

TEST_CASE("coordinate sphere mean curvature") {
  const auto hyp = AmbientMetric::hyperbolic();
  CHECK(hyp.coordinate_sphere_mean_curvature(1.0) ==
        doctest::Approx(2.0 / std::tanh(1.0)).epsilon(1e-14));
  const auto ads = AmbientMetric::ads_schwarzschild(2.0);
  const double H5 = ads.coordinate_sphere_mean_curvature(5.0);
  CHECK(std::abs(H5 - 2 * std::cosh(5.0) / std::sinh(5.0)) < 1e-5);
  // monotone decreasing to 2
  CHECK(hyp.coordinate_sphere_mean_curvature(2.0) >
        hyp.coordinate_sphere_mean_curvature(8.0));
  CHECK(hyp.coordinate_sphere_mean_curvature(20.0) ==
        doctest::Approx(2.0).epsilon(1e-12));
  const auto pert = AmbientMetric::perturbed(0.0, QSpec{0.1, 3.0, {1.0}});
  CHECK_THROWS_AS(pert.coordinate_sphere_mean_curvature(3.0), MetricError);
}

TEST_CASE("closed-form sphere Hawking mass") {
  const auto hyp = AmbientMetric::hyperbolic();
  for (double rho : {2.0, 4.0, 7.0})
    CHECK(std::abs(hyp.sphere_hawking_mass(rho)) < 1e-9);
  const auto ads = AmbientMetric::ads_schwarzschild(2.0);
  double prev = ads.sphere_hawking_mass(4.0);
  for (double rho : {6.0, 8.0}) {
    const double mh = ads.sphere_hawking_mass(rho);
    CHECK(std::abs(mh - 1.0) < std::abs(prev - 1.0));  // approaches m/2
    CHECK(mh > 1.0);                                   // from above
    prev = mh;
  }
  CHECK(ads.sphere_hawking_mass(8.0) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("bad points are rejected") {
  const auto hyp = AmbientMetric::hyperbolic();
  CHECK_THROWS_AS(hyp.metric({0.05, 1.0, 0.0}), MetricError);
  CHECK_THROWS_AS(AmbientMetric::ads_schwarzschild(0.0), MetricError);
  CHECK_THROWS_AS(AmbientMetric::perturbed(0.0, QSpec{0.1, 2.0, {1.0}}),
                  MetricError);
}
