#include "vasnet/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cstring>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "vasnet/errors.hpp"
#include "vasnet/snapshot.hpp"

namespace vasnet {

Snapshot state_snapshot(const SimState& s) {
  Snapshot snap;
  snap.grid = s.grid;
  snap.time = s.time;
  snap.fields.emplace_back("n", s.n);
  const char* names[3] = {"px", "py", "pz"};
  for (int a = 0; a < s.grid.dims(); ++a) snap.fields.emplace_back(names[a], s.p[a]);
  snap.fields.emplace_back("c", s.c);
  return snap;
}

namespace {

void write_state(const std::filesystem::path& dir, const std::string& name, const SimState& s) {
  write_snapshot(dir / name, state_snapshot(s));
}

}  // namespace

RunResult run_to_stationary(const SimState& initial, const RunOptions& opts) {
  if (opts.freeze_window < 1) throw ConfigError("freeze window must be positive");
  if (opts.diag_every < 1) throw ConfigError("diagnostic cadence must be positive");
  std::filesystem::path dir;
  if (!opts.out_dir.empty()) {
    dir = opts.out_dir;
    std::filesystem::create_directories(dir);
  }

  Simulation sim(initial, opts.step, opts.workers);
  RunResult result;
  result.diagnostics.push_back(measure(sim.state()));
  if (!dir.empty() && opts.snapshot_every > 0) write_state(dir, "snapshot_000000.vnf", sim.state());

  double peak = result.diagnostics.front().kinetic_energy;
  int quiet = 0;
  for (;;) {
    if (sim.time() >= opts.t_end) {
      result.stop_reason = "t_end";
      break;
    }
    if (sim.steps() - initial.step >= opts.max_steps) {
      result.stop_reason = "max_steps";
      break;
    }
    const double remaining = opts.t_end - sim.time();
    const StepReport rep = sim.step(std::min(opts.dt_max, remaining));
    const SimState& s = sim.state();
    const double ke = kinetic_energy(s);
    peak = std::max(peak, ke);
    const long n = sim.steps() - initial.step;
    if (n % opts.diag_every == 0) {
      DiagnosticRow row = measure(s, rep.dt, sim.clipped_total());
      result.diagnostics.push_back(row);
    }
    if (opts.observer) opts.observer(s, rep);
    if (!dir.empty() && opts.snapshot_every > 0 && n % opts.snapshot_every == 0) {
      char name[32];
      std::snprintf(name, sizeof name, "snapshot_%06ld.vnf", n);
      write_state(dir, name, s);
    }
    quiet = ke <= opts.freeze_fraction * peak ? quiet + 1 : 0;
    if (opts.freeze && quiet >= opts.freeze_window) {
      result.stop_reason = "frozen";
      break;
    }
  }

  result.final = sim.state();
  result.peak_kinetic_energy = peak;
  result.clipped_mass = sim.clipped_total();
  result.steps = sim.steps() - initial.step;
  if (result.diagnostics.back().t != result.final.time)
    result.diagnostics.push_back(measure(result.final, 0.0, result.clipped_mass));

  if (!dir.empty()) {
    std::ofstream csv(dir / "diagnostics.csv");
    write_diagnostics_csv(csv, result.diagnostics);
    write_state(dir, "final.vnf", result.final);
  }
  return result;
}

namespace {

bool same_bits(const ScalarField& a, const ScalarField& b) {
  const auto x = a.interior(), y = b.interior();
  return x.size() == y.size() && std::memcmp(x.data(), y.data(), x.size() * sizeof(double)) == 0;
}

bool same_state(const SimState& a, const SimState& b) {
  if (!same_bits(a.n, b.n) || !same_bits(a.c, b.c)) return false;
  for (int d = 0; d < a.grid.dims(); ++d)
    if (!same_bits(a.p[d], b.p[d])) return false;
  return a.time == b.time;
}

}  // namespace

std::vector<ScalingRow> measure_scaling(const SimState& initial, const StepOptions& opts,
                                        long steps, const std::vector<int>& workers) {
  std::vector<ScalingRow> rows;
  SimState reference;
  for (int w : workers) {
    Simulation sim(initial, opts, w);
    const auto t0 = std::chrono::steady_clock::now();
    for (long s = 0; s < steps; ++s) sim.step();
    const auto t1 = std::chrono::steady_clock::now();
    ScalingRow row;
    row.workers = w;
    row.seconds = std::chrono::duration<double>(t1 - t0).count();
    if (rows.empty()) {
      reference = sim.state();
    } else {
      row.speedup = rows.front().seconds / row.seconds;
      row.identical = same_state(reference, sim.state());
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace vasnet
