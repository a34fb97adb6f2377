#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "vasnet/diagnostics.hpp"
#include "vasnet/snapshot.hpp"
#include "vasnet/stepper.hpp"

namespace vasnet {

struct RunOptions {
  StepOptions step;
  int workers = 1;
  double t_end = std::numeric_limits<double>::infinity();
  double dt_max = std::numeric_limits<double>::infinity();
  long max_steps = 1'000'000;
  bool freeze = true;
  double freeze_fraction = 1e-4;  // of the running kinetic-energy peak
  int freeze_window = 50;         // consecutive steps
  long diag_every = 1;            // rows kept in RunResult::diagnostics
  long snapshot_every = 0;        // 0: final snapshot only
  std::string out_dir;            // empty: nothing written
  // Called after every step with the gathered state.
  std::function<void(const SimState&, const StepReport&)> observer;
};

struct RunResult {
  SimState final;
  std::vector<DiagnosticRow> diagnostics;
  double peak_kinetic_energy = 0.0;
  double clipped_mass = 0.0;
  long steps = 0;
  std::string stop_reason;  // "frozen", "t_end" or "max_steps"
};

// Fields n, px[, py, pz], c of a state.
Snapshot state_snapshot(const SimState& s);

// Couples transport, momentum sources and chemoattractant diffusion with a
// shared dt until t_end, max_steps or the kinetic-energy freeze rule.
// Writes diagnostics.csv and VNF1 snapshots into out_dir when set.
RunResult run_to_stationary(const SimState& initial, const RunOptions& opts);

struct ScalingRow {
  int workers = 1;
  double seconds = 0.0;   // wall clock for all steps
  double speedup = 1.0;   // against the first row
  bool identical = true;  // final n, p, c bitwise equal to the first row
};

// Times `steps` calls of Simulation::step from the same initial state for
// each worker count.
std::vector<ScalingRow> measure_scaling(const SimState& initial, const StepOptions& opts,
                                        long steps, const std::vector<int>& workers);

}  // namespace vasnet
