#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "vasnet/decomposition.hpp"
#include "vasnet/diagnostics.hpp"
#include "vasnet/errors.hpp"
#include "vasnet/seeding.hpp"
#include "vasnet/stepper.hpp"

using namespace vasnet;

namespace {

ModelParams fast_params() {
  ModelParams p = ModelParams::growth_factor_preset();
  p.mu0 = 1e-6;
  return p;
}

bool bitwise_equal(const ScalarField& a, const ScalarField& b) {
  const auto x = a.interior(), y = b.interior();
  return x.size() == y.size() && std::memcmp(x.data(), y.data(), x.size() * sizeof(double)) == 0;
}

bool same_state(const SimState& a, const SimState& b) {
  if (!bitwise_equal(a.n, b.n) || !bitwise_equal(a.c, b.c)) return false;
  for (int ax = 0; ax < a.grid.dims(); ++ax)
    if (!bitwise_equal(a.p[ax], b.p[ax])) return false;
  return true;
}

SimState run(const SimState& init, int workers, int steps, StepOptions opts = {}) {
  Simulation sim(init, opts, workers);
  for (int s = 0; s < steps; ++s) sim.step();
  return sim.state();
}

}  // namespace

TEST(Decomposition, SingleWorkerCoversGrid) {
  Grid g = Grid::cube(3, 12, 1.0);
  const auto d = decompose_domain(g, 1);
  ASSERT_EQ(d.size(), 1);
  EXPECT_EQ(d.block(0).grid.cells(2), 12);
  EXPECT_EQ(d.block(0).offset, (std::array<int, 3>{0, 0, 0}));
}

TEST(Decomposition, FourSlabsOf64Cube) {
  Grid g = Grid::cube(3, 64, 1.0);
  const auto d = decompose_domain(g, 4);
  ASSERT_EQ(d.size(), 4);
  EXPECT_EQ(d.splits(), (std::array<int, 3>{1, 1, 4}));
  for (int r = 0; r < 4; ++r) {
    EXPECT_EQ(d.block(r).grid.cells(2), 16);
    EXPECT_EQ(d.block(r).grid.cells(0), 64);
    EXPECT_EQ(d.block(r).offset[2], 16 * r);
    EXPECT_EQ(d.block(r).grid.spacing(2), g.spacing(2));
  }
}

TEST(Decomposition, PencilsWhenSlabsRunOut) {
  Grid g = Grid::cube(3, 8, 1.0);
  const auto d = decompose_domain(g, 8);
  EXPECT_EQ(d.size(), 8);
  EXPECT_GT(d.splits()[1], 1);
  std::size_t cells = 0;
  for (int r = 0; r < d.size(); ++r) {
    cells += d.block(r).grid.interior_count();
    for (int a = 0; a < 3; ++a) EXPECT_GE(d.block(r).grid.cells(a), kGhostWidth);
  }
  EXPECT_EQ(cells, g.interior_count());
}

TEST(Decomposition, ThinBlocksRejected) {
  EXPECT_THROW(decompose_domain(Grid::cube(1, 3, 1.0), 2), InvalidDecomposition);
  EXPECT_THROW(decompose_domain(Grid::cube(3, 4, 1.0), 0), InvalidDecomposition);
}

TEST(Decomposition, NeighboursWrap) {
  const auto d = decompose_domain(Grid::cube(3, 16, 1.0), 4);
  EXPECT_EQ(d.neighbor(0, 2, -1), 3);
  EXPECT_EQ(d.neighbor(3, 2, +1), 0);
  EXPECT_EQ(d.neighbor(1, 0, +1), 1);
}

TEST(Decomposition, HaloExchangeMatchesFillHalo) {
  for (int workers : {1, 2, 3, 4, 6}) {
    Grid g(3, {10, 9, 12}, {1.0, 0.9, 1.2});
    const auto d = decompose_domain(g, workers);
    ScalarField global = random_field(g, -1.0, 1.0, 77);
    std::vector<ScalarField> local;
    for (int r = 0; r < d.size(); ++r) {
      local.emplace_back(d.block(r).grid);
      scatter(d, r, global, local.back());
    }
    std::vector<ScalarField*> ptrs;
    for (auto& f : local) ptrs.push_back(&f);
    for (int axis = 0; axis < 3; ++axis)
      for (int r = 0; r < d.size(); ++r) exchange_axis(d, r, axis, ptrs);
    for (int r = 0; r < d.size(); ++r) {
      const auto& b = d.block(r);
      const int w = kGhostWidth;
      for (int k = -w; k < b.grid.cells(2) + w; ++k)
        for (int j = -w; j < b.grid.cells(1) + w; ++j)
          for (int i = -w; i < b.grid.cells(0) + w; ++i) {
            const int gi = b.offset[0] + i, gj = b.offset[1] + j, gk = b.offset[2] + k;
            ASSERT_EQ(local[r](i, j, k), global(gi, gj, gk)) << workers << " rank " << r;
          }
    }
    ScalarField back(g);
    for (int r = 0; r < d.size(); ++r) gather(d, r, local[r], back);
    EXPECT_TRUE(bitwise_equal(back, global));
  }
}

TEST(Simulation, BitIdenticalAcrossWorkerCounts) {
  Grid g = Grid::cube(3, 16, 0.2);
  const SimState init = seed_initial_state(g, fast_params().resolved(3), 1200.0, 3);
  const SimState ref = run(init, 1, 12);
  for (int w : {2, 3, 4, 8}) EXPECT_TRUE(same_state(ref, run(init, w, 12))) << w << " workers";
}

TEST(Simulation, HeunAlsoDeterministic) {
  Grid g = Grid::cube(2, 24, 0.3);
  StepOptions o;
  o.time_scheme = TimeScheme::heun;
  const SimState init = seed_initial_state(g, fast_params().resolved(2), 300.0, 4);
  EXPECT_TRUE(same_state(run(init, 1, 10, o), run(init, 3, 10, o)));
}

TEST(Simulation, ConservesMass) {
  Grid g = Grid::cube(3, 16, 0.2);
  const SimState init = seed_initial_state(g, fast_params().resolved(3), 1500.0, 5);
  Simulation sim(init, {}, 2);
  const double m0 = integrate(init.n);
  for (int s = 0; s < 100; ++s) sim.step();
  ASSERT_EQ(sim.clipped_total(), 0.0);
  EXPECT_LE(std::abs(integrate(sim.state().n) - m0), 1e-12 * m0);
}

TEST(Simulation, RestingStateWithoutForcesStaysAtRest) {
  Grid g = Grid::cube(1, 64, 0.5);
  ModelParams p = fast_params();
  p.mu0 = 0.0;
  const Point centre{0.25, 0, 0};
  const SimState init = seed_bumps(g, p.resolved(1), std::span(&centre, 1));
  Simulation sim(init, {}, 1);
  for (int s = 0; s < 200; ++s) sim.step(1.0);
  EXPECT_EQ(kinetic_energy(sim.state()), 0.0);
  // only the floor wave speed sqrt(1e-12) smears n: 200 steps of lambda c ~ 1.3e-4
  double worst = 0.0;
  for (int i = 0; i < 64; ++i) worst = std::max(worst, std::abs(sim.state().n(i) - init.n(i)));
  EXPECT_LE(worst, 200 * 1.3e-4 * max_value(init.n));
  EXPECT_NEAR(integrate(sim.state().n), integrate(init.n), 1e-12 * integrate(init.n));
}

TEST(Simulation, SlabMatchesOneDimensionalRun) {
  const int N = 100;
  ModelParams p = fast_params();
  p.mu0 = 1e-5;
  p.packing_volume = 0.03;
  p.c0 = 1e9;
  Grid g1 = Grid::cube(1, N, 0.5);
  Grid g3(3, {N, 4, 4}, {0.5, 0.02, 0.02});
  const Point centres[2] = {{0.2, 0, 0}, {0.3, 0, 0}};
  SimState s1 = seed_bumps(g1, p.resolved(1), centres);
  SimState s3(g3, s1.params);
  for_each_cell(g3, [&](int i, int j, int k) { s3.n(i, j, k) = s1.n(i); });
  Simulation a(s1, {}, 1), b(s3, {}, 2);
  for (int s = 0; s < 300; ++s) {
    a.step(0.05);
    b.step(0.05);
  }
  const auto& x = a.state();
  const auto& y = b.state();
  double scale = max_value(x.n);
  for_each_cell(g3, [&](int i, int j, int k) {
    ASSERT_NEAR(y.n(i, j, k), x.n(i), 1e-6 * scale);
    ASSERT_NEAR(y.p[0](i, j, k), x.p[0](i), 1e-6 * scale);
    ASSERT_EQ(y.p[1](i, j, k), 0.0);
  });
  EXPECT_GT(kinetic_energy(x), 0.0);
}

TEST(Simulation, NonFiniteStateThrows) {
  Grid g = Grid::cube(1, 16, 0.2);
  SimState s(g, fast_params().resolved(1));
  s.n.fill(1.0);
  s.n(3) = std::nan("");
  Simulation sim(s, {}, 1);
  EXPECT_THROW(sim.step(), NonFiniteState);
}

TEST(Simulation, HyperbolicStepChecksCfl) {
  Grid g = Grid::cube(1, 32, 0.32);
  const Point centre{0.16, 0, 0};
  SimState s = seed_bumps(g, fast_params().resolved(1), std::span(&centre, 1));
  for_each_cell(g, [&](int i, int, int) { s.p[0](i) = 0.1 * s.n(i); });
  Simulation sim(s, {}, 1);
  const double dt = sim.stable_dt();
  EXPECT_THROW(sim.hyperbolic_step(dt * 1.2 / 0.9), CflViolation);
  EXPECT_NO_THROW(sim.hyperbolic_step(dt));
}

TEST(Simulation, StableStepRespectsDiffusionLimit) {
  Grid g = Grid::cube(2, 32, 0.1);
  ModelParams p = fast_params();
  p.D = 1e-3;
  SimState s(g, p.resolved(2));
  Simulation sim(s, {}, 1);
  EXPECT_LE(sim.stable_dt(), 0.9 * diffusion_stability_limit(g, p.D) * (1 + 1e-15));
  EXPECT_LE(sim.stable_dt(), 0.9 * chemo_step_limit(g, p) * (1 + 1e-15));
}

TEST(SplitStep, ConstantStateUnchanged) {
  Grid g = Grid::cube(2, 10, 0.1);
  SimState s(g, fast_params().resolved(2));
  s.n.fill(5.0);
  s.c.fill(3.0);
  const SimState t = split_step(s, 0.1);
  for_each_cell(g, [&](int i, int j, int k) {
    EXPECT_DOUBLE_EQ(t.n(i, j, k), 5.0);
    EXPECT_DOUBLE_EQ(t.p[0](i, j, k), 0.0);
  });
}

TEST(SplitStep, ConservesMassAndLeavesConcentration) {
  Grid g = Grid::cube(2, 32, 0.4);
  SimState s = seed_initial_state(g, fast_params().resolved(2), 400.0, 6);
  s.c = random_field(g, 0.0, 100.0, 8);
  const double m0 = integrate(s.n);
  SimState t = split_step(s, 0.2);
  EXPECT_NEAR(integrate(t.n), m0, 1e-13 * m0);
  EXPECT_TRUE(bitwise_equal(t.c, s.c));
}
