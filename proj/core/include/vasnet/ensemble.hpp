#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vasnet/driver.hpp"
#include "vasnet/percolation.hpp"

namespace vasnet {

struct SweepPoint {
  double n_bar = 0.0;
  double L = 0.0;
  std::vector<std::uint64_t> seeds;
};

struct EnsembleOptions {
  int dims = 3;
  double spacing = 0.5 / 64;  // mm, kept for every box size
  ModelParams params;
  // out_dir ignored; see out_dir below. With parallel_runs > 1 the observer is
  // called concurrently from several runs. A throw fails that realization only.
  RunOptions run;
  double n_thresh = 0.35;
  SpanRule span = SpanRule::any_axis;
  int parallel_runs = 1;      // realizations in flight
  std::string out_dir;        // one subdirectory per realization when set
};

struct RealizationResult {
  double L = 0.0;
  double n_bar = 0.0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  std::string stop_reason;
  long steps = 0;
  double time = 0.0;
  RealizationRow row;
  std::optional<SimState> final;  // kept when out_dir is empty
};

// Stable run index for the position generator of one sweep point.
std::uint64_t sweep_run_id(double L, double n_bar);

// Directory name for one realization: L<L>_n<n_bar>_s<seed>.
std::string realization_name(double L, double n_bar, std::uint64_t seed);

// Thresholds n * scale and labels the result.
RealizationRow analyse_field(const ScalarField& n, double scale, double n_thresh, SpanRule span);

// Runs every (point, seed) to stationarity and analyses the final density.
// Failed realizations are reported with ok = false; the sweep carries on.
std::vector<RealizationResult> run_ensemble(const std::vector<SweepPoint>& sweep,
                                            const EnsembleOptions& opts);

// Rows of the successful realizations.
std::vector<RealizationRow> successful_rows(const std::vector<RealizationResult>& results);

}  // namespace vasnet
