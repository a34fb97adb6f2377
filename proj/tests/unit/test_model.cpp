#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "vasnet/errors.hpp"
#include "vasnet/model.hpp"
#include "vasnet/state.hpp"

using namespace vasnet;

namespace {

ModelParams resolved(ModelParams p, int dims = 3) { return p.resolved(dims); }

// Trapezoid over k of the Fourier representation of the steady response at
// the centre of a Gaussian source: alpha exp(-s^2 k^2 / 2) / (D k^2 + 1/tau).
double spectral_peak(const ModelParams& p, int dims, double alpha) {
  const double s = p.sigma, kmax = 12.0 / s;
  const int steps = 400000;
  const double dk = kmax / steps;
  double sum = 0.0;
  for (int m = 0; m <= steps; ++m) {
    const double k = m * dk;
    double f = alpha * std::exp(-0.5 * s * s * k * k) / (p.D * k * k + 1.0 / p.tau);
    if (dims == 1) f *= 2.0 / (2.0 * std::numbers::pi);
    if (dims == 2) f *= 2.0 * std::numbers::pi * k / std::pow(2.0 * std::numbers::pi, 2);
    if (dims == 3) f *= 4.0 * std::numbers::pi * k * k / std::pow(2.0 * std::numbers::pi, 3);
    sum += (m == 0 || m == steps ? 0.5 : 1.0) * f;
  }
  return sum * dk;
}

}  // namespace

TEST(PressurePhi, BelowClosePackingIsZero) {
  ModelParams p;
  EXPECT_EQ(pressure_phi(0.5, p), 0.0);
  EXPECT_EQ(pressure_phi(p.n0_pack, p), 0.0);
}

TEST(PressurePhi, UnitExcessGivesAmplitude) {
  ModelParams p;
  EXPECT_DOUBLE_EQ(pressure_phi(2.0, p), 1e-3);
}

TEST(PressurePhi, MonotoneAndContinuous) {
  for (double cp : {1.0, 2.0, 3.0, 4.5}) {
    ModelParams p;
    p.Cp = cp;
    p.Bp = 0.7;
    double prev = -1.0;
    for (double m = 0.0; m < 3.0; m += 1e-3) {
      const double v = pressure_phi(m, p);
      EXPECT_GE(v, prev);
      prev = v;
    }
    EXPECT_NEAR(pressure_phi(p.n0_pack + 1e-9, p), 0.0, 1e-8);
    if (cp >= 2.0) EXPECT_NEAR(pressure_slope(p.n0_pack + 1e-9, p), 0.0, 1e-7);
  }
}

TEST(PressureSlope, MatchesFiniteDifference) {
  ModelParams p;
  p.Cp = 2.5;
  p.Bp = 0.3;
  for (double m : {1.2, 1.7, 2.9}) {
    const double h = 1e-6;
    const double fd = (pressure_phi(m + h, p) - pressure_phi(m - h, p)) / (2 * h);
    EXPECT_NEAR(pressure_slope(m, p), fd, 1e-7);
  }
}

TEST(GradPhi, ZeroBelowClosePacking) {
  Grid g = Grid::cube(3, 8, 0.2);
  ModelParams p;
  ScalarField n(g, 0.5 / p.packing_scale(3));
  fill_halo(n);
  const VectorField gp = grad_phi(n, p);
  for (int a = 0; a < 3; ++a)
    for (double v : gp[a].values()) EXPECT_EQ(v, 0.0);
}

TEST(GradPhi, LinearProfileGivesConstantGradient) {
  // not periodic, so only check cells whose stencil stays inside the ramp
  Grid g = Grid::cube(1, 40, 1.0);
  ModelParams p;
  p.Cp = 1.0;
  p.Bp = 0.25;
  p.packing_volume = 1.0;
  const double slope = 3.0;
  ScalarField n(g);
  for (int i = -2; i < 42; ++i) n(i) = 2.0 + slope * g.center(0, i);
  const VectorField gp = grad_phi(n, p);
  for (int i = 0; i < 40; ++i) EXPECT_NEAR(gp[0](i), p.Bp * slope, 1e-12);
}

TEST(GradPhi, SecondOrderConvergence) {
  ModelParams p;
  p.Cp = 3.0;
  p.Bp = 0.1;
  p.packing_volume = 1.0;
  auto err = [&](int N) {
    Grid g = Grid::cube(1, N, 1.0);
    ScalarField n(g);
    const double w = 2.0 * std::numbers::pi;
    for_each_cell(g, [&](int i, int, int) { n(i) = 2.0 + 0.5 * std::sin(w * g.center(0, i)); });
    fill_halo(n);
    const VectorField gp = grad_phi(n, p);
    double e = 0.0;
    for (int i = 0; i < N; ++i) {
      const double x = g.center(0, i);
      const double m = 2.0 + 0.5 * std::sin(w * x);
      const double exact = pressure_slope(m, p) * 0.5 * w * std::cos(w * x);
      e = std::max(e, std::abs(gp[0](i) - exact));
    }
    return e;
  };
  const double order = std::log2(err(64) / err(128));
  EXPECT_GT(order, 1.9);
  EXPECT_LT(order, 2.1);
}

TEST(Saturation, ValuesAtThreshold) {
  ModelParams p;
  p.c0 = 5.0;
  EXPECT_DOUBLE_EQ(saturation_mu(5.0, p), p.mu0);
  EXPECT_DOUBLE_EQ(saturation_alpha(5.0, p), p.alpha0);
  EXPECT_DOUBLE_EQ(saturation_beta(5.0, p), p.beta0);
}

TEST(Saturation, Limits) {
  ModelParams p;
  p.c0 = 5.0;
  EXPECT_NEAR(saturation_mu(1e6, p), 0.0, 1e-30);
  EXPECT_NEAR(saturation_alpha(1e6, p), 0.0, 1e-30);
  EXPECT_DOUBLE_EQ(saturation_beta(1e6, p), 2.0 * p.beta0);
  EXPECT_DOUBLE_EQ(saturation_mu(-1e6, p), 2.0 * p.mu0);
}

TEST(Saturation, DisabledReturnsConstants) {
  ModelParams p;
  p.saturation_enabled = false;
  for (double c : {-10.0, 0.0, 1e9}) {
    EXPECT_EQ(saturation_mu(c, p), p.mu0);
    EXPECT_EQ(saturation_alpha(c, p), p.alpha0);
    EXPECT_EQ(saturation_beta(c, p), p.beta0);
  }
}

TEST(Saturation, StrictMonotonicityAndBounds) {
  ModelParams p;
  p.mu0 = 2.0;
  p.c0 = 0.0;
  double mu = 1e300, al = 1e300, be = -1.0;
  for (double c = -15.0; c <= 15.0; c += 0.01) {
    const double m = saturation_mu(c, p), a = saturation_alpha(c, p), b = saturation_beta(c, p);
    EXPECT_LT(m, mu);
    EXPECT_LT(a, al);
    EXPECT_GT(b, be);
    EXPECT_GE(m, 0.0);
    EXPECT_LE(m, 2 * p.mu0);
    EXPECT_LE(b, 2 * p.beta0);
    mu = m, al = a, be = b;
  }
}

TEST(ModelParams, ValidateRejectsBrokenInvariants) {
  auto bad = [](auto edit) {
    ModelParams p;
    edit(p);
    EXPECT_THROW(p.validate(), ConfigError);
  };
  bad([](ModelParams& p) { p.D = 0; });
  bad([](ModelParams& p) { p.tau = -1; });
  bad([](ModelParams& p) { p.sigma = 0; });
  bad([](ModelParams& p) { p.Cp = 0.5; });
  bad([](ModelParams& p) { p.Bp = -1e-3; });
  bad([](ModelParams& p) { p.n0_pack = 0; });
  EXPECT_NO_THROW(ModelParams{}.validate());
}

TEST(ModelParams, RangeFromPresets) {
  EXPECT_NEAR(ModelParams::growth_factor_preset().r0(), 0.196, 5e-4);
  EXPECT_DOUBLE_EQ(ModelParams::tissue_preset().r0(), 2.0);
}

TEST(ModelParams, DefaultsFromTheModelSection) {
  ModelParams p;
  EXPECT_EQ(p.D, 1e-3);
  EXPECT_EQ(p.tau, 4000.0);
  EXPECT_EQ(p.mu0, 1e-11);
  EXPECT_EQ(p.alpha0, 1.0);
  EXPECT_EQ(p.beta0, 1e-3);
  EXPECT_EQ(p.n0_pack, 1.0);
  EXPECT_EQ(p.Cp, 3.0);
  EXPECT_EQ(p.Bp, 1e-3);
}

TEST(IsolatedPeak, MatchesSpectralQuadrature) {
  for (int d : {1, 2, 3}) {
    ModelParams p = ModelParams::growth_factor_preset();
    const double got = isolated_cell_peak(p, d, 1.0);
    const double want = spectral_peak(p, d, 1.0);
    EXPECT_NEAR(got, want, 1e-5 * want) << "dims " << d;
  }
}

TEST(IsolatedPeak, CalibratedThresholdIsTwiceThePeak) {
  ModelParams p = ModelParams::growth_factor_preset();
  const double c0 = calibrated_c0(p, 3);
  EXPECT_NEAR(isolated_cell_peak(p, 3, 2.0 * p.alpha0), 0.5 * c0, 1e-12 * c0);
  p.c0 = 17.0;
  EXPECT_EQ(p.resolved(3).c0.value(), 17.0);
}

TEST(MomentumSource, ZeroDensityGivesZero) {
  Grid g = Grid::cube(2, 6, 0.1);
  SimState s(g, resolved(ModelParams{}, 2));
  for_each_cell(g, [&](int i, int j, int k) { s.c(i, j, k) = i * 3.0 + j; });
  s.fill_halos();
  const auto src = momentum_source(s, gradient(s.c), grad_phi(s.n, s.params));
  for (int a = 0; a < 2; ++a)
    for_each_cell(g, [&](int i, int j, int k) { EXPECT_EQ(src.momentum[a](i, j, k), 0.0); });
}

TEST(MomentumSource, UniformStateOnlyReacts) {
  Grid g = Grid::cube(3, 4, 0.1);
  ModelParams p;
  p.c0 = 3.0;
  SimState s(g, p.resolved(3));
  for_each_cell(g, [&](int i, int j, int k) {
    s.n(i, j, k) = 40.0;
    s.c(i, j, k) = 2.5;
  });
  s.fill_halos();
  const auto src = momentum_source(s, gradient(s.c), grad_phi(s.n, s.params));
  const double chem = saturation_alpha(2.5, s.params) * 40.0 - 2.5 / p.tau;
  for_each_cell(g, [&](int i, int j, int k) {
    for (int a = 0; a < 3; ++a) EXPECT_EQ(src.momentum[a](i, j, k), 0.0);
    EXPECT_DOUBLE_EQ(src.chem(i, j, k), chem);
  });
}

TEST(MomentumSource, PointsTowardBumpInEveryOctant) {
  const int N = 24;
  Grid g = Grid::cube(3, N, 0.48);
  ModelParams p = ModelParams::growth_factor_preset();
  p.mu0 = 1e-6;
  p.saturation_enabled = false;
  SimState s(g, p.resolved(3));
  const double x0 = 0.24, sn = 0.03, sc = 0.08;
  for_each_cell(g, [&](int i, int j, int k) {
    const double dx = g.center(0, i) - x0, dy = g.center(1, j) - x0, dz = g.center(2, k) - x0;
    const double r2 = dx * dx + dy * dy + dz * dz;
    s.n(i, j, k) = 100.0 * std::exp(-r2 / (2 * sn * sn));
    s.c(i, j, k) = 5000.0 * std::exp(-r2 / (2 * sc * sc));
  });
  s.fill_halos();
  const auto src = momentum_source(s, gradient(s.c), grad_phi(s.n, s.params));
  int checked = 0;
  for (int k = 2; k < N - 2; ++k)
    for (int j = 2; j < N - 2; ++j)
      for (int i = 2; i < N - 2; ++i) {
        const std::array<double, 3> d{g.center(0, i) - x0, g.center(1, j) - x0,
                                      g.center(2, k) - x0};
        for (int a = 0; a < 3; ++a) {
          if (std::abs(d[a]) < 1e-12 || s.n(i, j, k) < 1e-3) continue;
          // analytic Gaussian gradient has sign -d
          EXPECT_LT(src.momentum[a](i, j, k) * d[a], 0.0) << i << ' ' << j << ' ' << k;
          ++checked;
        }
      }
  EXPECT_GT(checked, 1000);
}

TEST(MomentumSource, HomogeneousInDensityAndMomentum) {
  Grid g = Grid::cube(2, 10, 0.2);
  ModelParams p;
  p.Bp = 0.0;
  p.c0 = 0.0;
  SimState s(g, p.resolved(2));
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for_each_cell(g, [&](int i, int j, int k) {
    s.n(i, j, k) = u(rng);
    s.c(i, j, k) = u(rng);
    s.p[0](i, j, k) = u(rng) - 0.5;
    s.p[1](i, j, k) = u(rng) - 0.5;
  });
  s.fill_halos();
  SimState t = s;
  for (auto* f : {&t.n, &t.p[0], &t.p[1]})
    for (double& v : f->values()) v *= 3.0;
  const auto gc = gradient(s.c);
  const auto a = momentum_source(s, gc, grad_phi(s.n, s.params));
  const auto b = momentum_source(t, gc, grad_phi(t.n, t.params));
  for (int ax = 0; ax < 2; ++ax)
    for_each_cell(g, [&](int i, int j, int k) {
      EXPECT_NEAR(b.momentum[ax](i, j, k), 3.0 * a.momentum[ax](i, j, k), 1e-13);
    });
}

TEST(VelocityRecovery, ReducesToRatioAwayFromVacuum) {
  EXPECT_DOUBLE_EQ(recover_velocity(2.0, 3.0, 0.0), 1.5);
  EXPECT_NEAR(recover_velocity(2.0, 3.0, 1e-9), 1.5, 1e-15);
  EXPECT_EQ(recover_velocity(0.0, 0.0, 1e-9), 0.0);
  EXPECT_TRUE(std::isfinite(recover_velocity(0.0, 1e-20, 1e-9)));
}
