#include "vasnet/ensemble.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <thread>

#include "vasnet/errors.hpp"
#include "vasnet/seeding.hpp"

namespace vasnet {

std::uint64_t sweep_run_id(double L, double n_bar) {
  return splitmix64(std::bit_cast<std::uint64_t>(L)) ^ std::bit_cast<std::uint64_t>(n_bar);
}

std::string realization_name(double L, double n_bar, std::uint64_t seed) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "L%.6g_n%.6g_s%llu", L, n_bar, static_cast<unsigned long long>(seed));
  return buf;
}

RealizationRow analyse_field(const ScalarField& n, double scale, double n_thresh, SpanRule span) {
  const ClusterLabeling lab = label_clusters(threshold_field(n, n_thresh, scale));
  RealizationRow row;
  row.percolates = lab.percolates(span);
  row.largest_fraction = order_parameter(lab);
  row.largest_occupied = largest_occupied_fraction(lab);
  row.clusters = lab.count();
  return row;
}

std::vector<RealizationResult> run_ensemble(const std::vector<SweepPoint>& sweep,
                                            const EnsembleOptions& opts) {
  if (opts.parallel_runs < 1) throw ConfigError("parallel_runs must be >= 1");
  std::vector<RealizationResult> results;
  for (const auto& pt : sweep)
    for (auto seed : pt.seeds) {
      RealizationResult r;
      r.L = pt.L;
      r.n_bar = pt.n_bar;
      r.seed = seed;
      results.push_back(r);
    }

  const ModelParams params = opts.params.resolved(opts.dims);
  const double scale = params.packing_scale(opts.dims);

  auto run_one = [&](RealizationResult& r) {
    try {
      const int cells = std::max(1, static_cast<int>(std::lround(r.L / opts.spacing)));
      const Grid grid = Grid::cube(opts.dims, cells, r.L);
      const SimState init = seed_initial_state(grid, params, r.n_bar, r.seed, sweep_run_id(r.L, r.n_bar));
      RunOptions ro = opts.run;
      ro.out_dir.clear();
      if (!opts.out_dir.empty())
        ro.out_dir = (std::filesystem::path(opts.out_dir) / realization_name(r.L, r.n_bar, r.seed)).string();
      RunResult res = run_to_stationary(init, ro);
      r.row = analyse_field(res.final.n, scale, opts.n_thresh, opts.span);
      r.stop_reason = res.stop_reason;
      r.steps = res.steps;
      r.time = res.final.time;
      if (opts.out_dir.empty()) r.final = std::move(res.final);
      r.ok = true;
    } catch (const std::exception& e) {
      r.ok = false;
      r.error = e.what();
    }
    r.row.L = r.L;
    r.row.n_bar = r.n_bar;
    r.row.seed = r.seed;
  };

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < results.size(); i = next++) run_one(results[i]);
  };
  const int threads = std::min<int>(opts.parallel_runs, static_cast<int>(results.size()));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return results;
}

std::vector<RealizationRow> successful_rows(const std::vector<RealizationResult>& results) {
  std::vector<RealizationRow> rows;
  for (const auto& r : results)
    if (r.ok) rows.push_back(r.row);
  return rows;
}

}  // namespace vasnet
