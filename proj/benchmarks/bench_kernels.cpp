#include <benchmark/benchmark.h>

#include "vasnet/chemo.hpp"
#include "vasnet/percolation.hpp"
#include "vasnet/seeding.hpp"
#include "vasnet/stepper.hpp"

using namespace vasnet;

namespace {

SimState seeded(int N) {
  const Grid g = Grid::cube(3, N, N * 0.0125);
  const ModelParams p = ModelParams::growth_factor_preset().resolved(3);
  return seed_initial_state(g, p, 2500.0, 7);
}

void BM_FullStep(benchmark::State& st) {
  Simulation sim(seeded(static_cast<int>(st.range(0))), StepOptions{}, 1);
  for (auto _ : st) sim.step();
  st.SetItemsProcessed(st.iterations() * st.range(0) * st.range(0) * st.range(0));
}
BENCHMARK(BM_FullStep)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond);

void BM_HyperbolicSweep(benchmark::State& st) {
  Simulation sim(seeded(static_cast<int>(st.range(0))), StepOptions{}, 1);
  const double dt = 0.5 * sim.stable_dt();
  for (auto _ : st) sim.hyperbolic_step(dt);
  st.SetItemsProcessed(st.iterations() * st.range(0) * st.range(0) * st.range(0));
}
BENCHMARK(BM_HyperbolicSweep)->Arg(32)->Arg(48)->Unit(benchmark::kMillisecond);

void BM_DiffuseReact(benchmark::State& st) {
  SimState s = seeded(static_cast<int>(st.range(0)));
  const double dt = 0.9 * diffusion_stability_limit(s.grid, s.params.D);
  for (auto _ : st) benchmark::DoNotOptimize(diffuse_react_step(s.c, s.n, s.params, dt));
  st.SetItemsProcessed(st.iterations() * st.range(0) * st.range(0) * st.range(0));
}
BENCHMARK(BM_DiffuseReact)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_ClusterLabeling(benchmark::State& st) {
  const int L = static_cast<int>(st.range(0));
  Occupancy occ(3, {L, L, L});
  for (std::size_t i = 0; i < occ.size(); ++i)
    occ.sites[i] = counter_uniform(11, 0, i, 0) < 0.3116 ? 1 : 0;
  ClusterLabeler labeler;
  for (auto _ : st) benchmark::DoNotOptimize(labeler.label(occ).count());
  st.SetItemsProcessed(st.iterations() * static_cast<long>(occ.size()));
}
BENCHMARK(BM_ClusterLabeling)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
