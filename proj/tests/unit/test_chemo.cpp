#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "vasnet/chemo.hpp"
#include "vasnet/errors.hpp"
#include "vasnet/seeding.hpp"

using namespace vasnet;

namespace {

ModelParams constant_alpha(double D, double tau) {
  ModelParams p;
  p.D = D;
  p.tau = tau;
  p.saturation_enabled = false;
  return p;
}

double inner(const ScalarField& a, const ScalarField& b) {
  double s = 0.0;
  for_each_cell(a.grid(), [&](int i, int j, int k) { s += a(i, j, k) * b(i, j, k); });
  return s;
}

// Steady ratio of a single sinusoidal mode along x on an N-cell line.
double single_mode_ratio(int N, const ModelParams& p) {
  Grid g = Grid::cube(1, N, 1.0);
  ScalarField n(g);
  for_each_cell(g, [&](int i, int, int) { n(i) = 1.0 + std::cos(2 * std::numbers::pi * 2 * g.center(0, i)); });
  SpectrumOptions o;
  o.dt_fraction = 0.9;
  for (const auto& r : steady_response_spectrum(n, p, o))
    if (r.mode[0] == 2) return r.measured;
  return std::nan("");
}

}  // namespace

TEST(DiffuseReact, UniformDecayExplicit) {
  Grid g = Grid::cube(3, 6, 0.6);
  ModelParams p = constant_alpha(1e-3, 4000.0);
  ScalarField c(g, 2.5), n(g);
  const double dt = 0.5;
  const ScalarField out = diffuse_react_step(c, n, p, dt, DiffusionScheme::explicit_euler);
  for_each_cell(g, [&](int i, int j, int k) { EXPECT_DOUBLE_EQ(out(i, j, k), 2.5 * (1 - dt / p.tau)); });
}

TEST(DiffuseReact, UniformDecayExact) {
  Grid g = Grid::cube(2, 6, 0.6);
  ModelParams p = constant_alpha(1e-3, 40.0);
  ScalarField c(g, 2.5), n(g);
  const ScalarField out = diffuse_react_step(c, n, p, 1.0);
  for_each_cell(g, [&](int i, int j, int k) { EXPECT_DOUBLE_EQ(out(i, j, k), 2.5 * std::exp(-1.0 / 40.0)); });
}

TEST(DiffuseReact, PureSource) {
  Grid g = Grid::cube(3, 5, 0.5);
  ModelParams p = constant_alpha(1e-3, 4000.0);
  p.alpha0 = 0.7;
  ScalarField c(g), n(g, 30.0);
  const ScalarField out = diffuse_react_step(c, n, p, 0.2, DiffusionScheme::explicit_euler);
  for_each_cell(g, [&](int i, int j, int k) { EXPECT_DOUBLE_EQ(out(i, j, k), 0.7 * 30.0 * 0.2); });
}

TEST(DiffuseReact, StabilityViolation) {
  Grid g = Grid::cube(3, 10, 1.0);
  ModelParams p = constant_alpha(1e-3, 4000.0);
  const double limit = diffusion_stability_limit(g, p.D);
  EXPECT_NEAR(limit, 0.01 / (6 * 1e-3), 1e-12);
  ScalarField c(g), n(g);
  EXPECT_THROW(diffuse_react_step(c, n, p, 1.01 * limit), StabilityViolation);
  EXPECT_NO_THROW(diffuse_react_step(c, n, p, chemo_step_limit(g, p)));
}

TEST(DiffuseReact, CombinedLimitBoundsNyquistMode) {
  // fast decay: the combined bound is tighter than the pure diffusion one
  const int N = 16;
  Grid g = Grid::cube(1, N, 1.0);
  ModelParams p = constant_alpha(1e-3, 2.0);
  const double h = 1.0 / N;
  const double rd = 2.0 / (1.0 / p.tau + 4.0 * p.D / (h * h));
  EXPECT_NEAR(reaction_diffusion_limit(g, p), rd, 1e-14);
  ASSERT_LT(rd, diffusion_stability_limit(g, p.D));
  EXPECT_DOUBLE_EQ(chemo_step_limit(g, p), rd);
  ScalarField c(g), n(g);
  for_each_cell(g, [&](int i, int, int) { c(i) = i % 2 ? -1.0 : 1.0; });
  fill_halo(c);
  const ScalarField out = diffuse_react_step(c, n, p, rd * (1 - 1e-9), DiffusionScheme::explicit_euler);
  for (int i = 0; i < N; ++i) EXPECT_LE(std::abs(out(i)), 1.0);
  EXPECT_NEAR(out(0), -1.0, 1e-8);
  EXPECT_THROW(diffuse_react_step(c, n, p, 1.01 * rd, DiffusionScheme::explicit_euler),
               StabilityViolation);
}

TEST(DiffuseReact, HeatModeDecayRate) {
  // explicit factor per step 1 - dt D k_h^2, k_h the discrete wave number;
  // against the semi-discrete exp(-dt D k_h^2) the one-step error is O(dt^2)
  const int N = 64;
  Grid g = Grid::cube(1, N, 1.0);
  ModelParams p = constant_alpha(1e-3, 1e30);
  p.alpha0 = 0.0;
  const double k = 2 * std::numbers::pi * 3;
  ScalarField c(g), n(g);
  for_each_cell(g, [&](int i, int, int) { c(i) = std::sin(k * g.center(0, i)); });
  fill_halo(c);
  const double kh2 = 4 * std::pow(std::sin(k * g.spacing(0) / 2), 2) / std::pow(g.spacing(0), 2);
  double prev_err = 0.0;
  for (double dt : {0.1, 0.05, 0.025}) {
    const ScalarField out = diffuse_react_step(c, n, p, dt, DiffusionScheme::explicit_euler);
    const double factor = out(5) / c(5);
    EXPECT_NEAR(factor, 1.0 - dt * p.D * kh2, 1e-12);
    const double err = std::abs(factor - std::exp(-dt * p.D * kh2));
    if (prev_err > 0.0) EXPECT_GT(prev_err / err, 3.0);
    prev_err = err;
  }
}

TEST(Laplacian, ConstantIsExactlyZero) {
  Grid g(3, {7, 5, 6}, {0.7, 0.3, 0.9});
  ScalarField c(g, 3.14159), out(g);
  laplacian(c, out);
  for_each_cell(g, [&](int i, int j, int k) { EXPECT_EQ(out(i, j, k), 0.0); });
}

TEST(Laplacian, Symmetric) {
  Grid g(3, {8, 6, 5}, {0.8, 0.5, 0.4});
  ScalarField a = random_field(g, -1, 1, 1), b = random_field(g, -1, 1, 2), la(g), lb(g);
  laplacian(a, la);
  laplacian(b, lb);
  const double x = inner(la, b), y = inner(a, lb);
  EXPECT_NEAR(x, y, 1e-12 * std::max(std::abs(x), 1.0));
}

TEST(Laplacian, SecondOrderOnSmoothField) {
  auto err = [](int N) {
    Grid g = Grid::cube(2, N, 1.0);
    ScalarField c(g), out(g);
    const double w = 2 * std::numbers::pi;
    for_each_cell(g, [&](int i, int j, int) {
      c(i, j) = std::sin(w * g.center(0, i)) * std::cos(2 * w * g.center(1, j));
    });
    fill_halo(c);
    laplacian(c, out);
    double e = 0.0;
    for_each_cell(g, [&](int i, int j, int) { e = std::max(e, std::abs(out(i, j) + 5 * w * w * c(i, j))); });
    return e;
  };
  EXPECT_GT(std::log2(err(32) / err(64)), 1.95);
}

TEST(DiffuseReact, TotalDecaysWithoutEmission) {
  Grid g = Grid::cube(3, 10, 0.5);
  ModelParams p = constant_alpha(1e-3, 400.0);
  p.alpha0 = 0.0;
  ScalarField c = random_field(g, 0, 1, 3), n = random_field(g, 0, 1, 4);
  const double dt = 0.9 * diffusion_stability_limit(g, p.D);
  double total = integrate(c);
  for (int s = 0; s < 50; ++s) {
    fill_halo(c);
    c = diffuse_react_step(c, n, p, dt);
    const double now = integrate(c);
    EXPECT_LT(now, total);
    total = now;
  }
}

TEST(DiffuseReact, IntegralBalance) {
  // d/dt int c = int alpha n - int c / tau; the Laplacian integrates to zero
  Grid g = Grid::cube(2, 16, 0.4);
  ModelParams p = constant_alpha(1e-4, 100.0);
  ScalarField c = random_field(g, 0, 5, 5), n = random_field(g, 0, 3, 6);
  const double dt = 0.5 * diffusion_stability_limit(g, p.D);
  const ScalarField out = diffuse_react_step(c, n, p, dt, DiffusionScheme::explicit_euler);
  const double want = integrate(c) + dt * (p.alpha0 * integrate(n) - integrate(c) / p.tau);
  EXPECT_NEAR(integrate(out), want, 1e-12 * std::abs(want));
}

TEST(PredictedScale, Presets) {
  EXPECT_NEAR(predicted_scale(ModelParams::growth_factor_preset()), 0.196, 5e-4);
  EXPECT_DOUBLE_EQ(predicted_scale(ModelParams::tissue_preset()), 2.0);
  ModelParams p;
  p.D = 0.0;
  EXPECT_EQ(predicted_scale(p), 0.0);
}

TEST(Spectrum, ZeroModeIsAlphaTau) {
  Grid g = Grid::cube(1, 16, 1.0);
  ModelParams p = constant_alpha(1e-3, 20.0);
  p.alpha0 = 0.5;
  ScalarField n(g, 2.0);
  const auto rows = steady_response_spectrum(n, p);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].mode[0], 0);
  EXPECT_NEAR(rows[0].measured, p.alpha0 * p.tau, 1e-8 * p.alpha0 * p.tau);
  EXPECT_DOUBLE_EQ(rows[0].theory, p.alpha0 * p.tau);
}

TEST(Spectrum, HalfAmplitudeAtRangeWaveNumber) {
  // L = 2 pi r0 puts the first mode at D tau k^2 = 1
  const double tau = 25.0, r0 = 1.0 / (2 * std::numbers::pi);
  ModelParams p = constant_alpha(r0 * r0 / tau, tau);
  Grid g = Grid::cube(1, 128, 1.0);
  ScalarField n(g);
  for_each_cell(g, [&](int i, int, int) { n(i) = 1.0 + 0.5 * std::sin(2 * std::numbers::pi * g.center(0, i)); });
  for (const auto& r : steady_response_spectrum(n, p))
    if (r.mode[0] == 1) {
      EXPECT_NEAR(r.theory, p.alpha0 * tau / 2, 1e-12);
      EXPECT_NEAR(r.measured, p.alpha0 * tau / 2, 1e-3 * tau);
      return;
    }
  FAIL() << "mode 1 missing";
}

TEST(Spectrum, SecondOrderInSpace) {
  ModelParams p = constant_alpha(2e-3, 10.0);
  const double k = 2 * std::numbers::pi * 2;
  const double exact = p.alpha0 * p.tau / (p.D * p.tau * k * k + 1);
  const double e1 = std::abs(single_mode_ratio(16, p) - exact);
  const double e2 = std::abs(single_mode_ratio(32, p) - exact);
  EXPECT_GE(std::log2(e1 / e2), 1.9);
}

TEST(Spectrum, RejectsSaturation) {
  Grid g = Grid::cube(1, 8, 1.0);
  ModelParams p;
  p.c0 = 1.0;
  EXPECT_THROW(steady_response_spectrum(ScalarField(g, 1.0), p), ConfigError);
}

TEST(Spectrum, NoConvergenceWhenCapped) {
  Grid g = Grid::cube(1, 8, 1.0);
  ModelParams p = constant_alpha(1e-3, 1e4);
  SpectrumOptions o;
  o.max_steps = 10;
  ScalarField n(g, 1.0);
  EXPECT_THROW(steady_response_spectrum(n, p, o), NoConvergence);
}

TEST(Spectrum, CsvHeader) {
  std::ostringstream s;
  write_spectrum_csv(s, {ModeRatio{{1, 0, 0}, 6.28, 1.0, 1.0}});
  EXPECT_EQ(s.str().substr(0, s.str().find('\n')), "mx,my,mz,k,measured,theory");
}
