// vasnet command-line front end.
#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <regex>

#include "vasnet/chemo.hpp"
#include "vasnet/config.hpp"
#include "vasnet/driver.hpp"
#include "vasnet/ensemble.hpp"
#include "vasnet/errors.hpp"
#include "vasnet/percolation.hpp"
#include "vasnet/scaling_fit.hpp"
#include "vasnet/seeding.hpp"
#include "vasnet/snapshot.hpp"

namespace fs = std::filesystem;
using namespace vasnet;

namespace {

struct Common {
  std::string config_path;
  std::map<std::string, std::string> overrides;
};

void add_config_flags(CLI::App* app, Common& c) {
  app->add_option("--config", c.config_path, "INI config file")->check(CLI::ExistingFile);
  for (const auto& k : config_keys())
    app->add_option_function<std::string>(
           "--" + k.name, [&c, name = k.name](const std::string& v) { c.overrides[name] = v; },
           k.help + " [" + k.section + "] (default " + k.default_value + ")")
        ->group(k.section);
}

SimConfig resolve(const Common& c) {
  SimConfig cfg = c.config_path.empty() ? SimConfig() : SimConfig::load(c.config_path);
  for (const auto& [k, v] : c.overrides) cfg.set(k, v);
  return cfg;
}

void save_config(const SimConfig& cfg, const fs::path& dir) {
  fs::create_directories(dir);
  std::ofstream out(dir / "config.ini");
  cfg.save(out);
}

void warn_resolution(const Grid& g) {
  for (int a = 0; a < g.dims(); ++a)
    if (g.spacing(a) >= 0.010)
      std::cerr << "warning: spacing " << g.spacing(a) * 1e3
                << " um on axis " << a << " does not resolve single cells (< 10 um)\n";
}

int cmd_simulate(const SimConfig& cfg) {
  const Grid grid = cfg.grid();
  warn_resolution(grid);
  const ModelParams params = cfg.model().resolved(grid.dims());
  const SimState init = seed_initial_state(grid, params, cfg.density(), cfg.seed());
  RunOptions ro = cfg.run_options();
  save_config(cfg, ro.out_dir);
  const RunResult res = run_to_stationary(init, ro);
  const auto& last = res.diagnostics.back();
  std::cout << "stop=" << res.stop_reason << " steps=" << res.steps << " t=" << res.final.time
            << " mass=" << last.mass << " kinetic_energy=" << last.kinetic_energy
            << " max_n=" << last.max_n << " clipped=" << res.clipped_mass << '\n'
            << "wrote " << (fs::path(ro.out_dir) / "diagnostics.csv").string() << " and final.vnf\n";
  return 0;
}

void write_tables(const fs::path& dir, const std::vector<RealizationRow>& rows) {
  fs::create_directories(dir);
  std::ofstream r(dir / "realizations.csv");
  write_realizations_csv(r, rows);
  if (rows.empty()) {
    std::cerr << "no successful realizations; percolation table not written\n";
    return;
  }
  const auto table = percolation_probability(tally(rows));
  std::ofstream p(dir / "pi.csv");
  write_pi_csv(p, table);
  for (const auto& pt : table)
    std::cout << "L=" << pt.L << " n_bar=" << pt.n_bar << " Pi=" << pt.pi << " +- " << pt.stderr_
              << " (" << pt.percolating << "/" << pt.realizations << ")\n";
}

int cmd_ensemble(const SimConfig& cfg) {
  const Grid ref = cfg.grid();
  warn_resolution(ref);
  EnsembleOptions eo;
  eo.dims = ref.dims();
  eo.spacing = ref.spacing(0);
  eo.params = cfg.model();
  eo.run = cfg.run_options();
  eo.n_thresh = cfg.n_thresh();
  eo.span = cfg.span();
  eo.parallel_runs = cfg.parallel_runs();
  eo.out_dir = cfg.out();
  std::vector<SweepPoint> sweep;
  for (double L : cfg.box_lengths())
    for (double n : cfg.densities()) {
      SweepPoint pt{n, L, {}};
      for (int s = 0; s < cfg.realizations(); ++s) pt.seeds.push_back(cfg.seed() + s);
      sweep.push_back(pt);
    }
  save_config(cfg, eo.out_dir);
  const auto results = run_ensemble(sweep, eo);
  int failed = 0;
  for (const auto& r : results)
    if (!r.ok) {
      ++failed;
      std::cerr << "failed: " << realization_name(r.L, r.n_bar, r.seed) << ": " << r.error << '\n';
    }
  write_tables(eo.out_dir, successful_rows(results));
  std::cout << results.size() - failed << " of " << results.size() << " realizations completed\n";
  return failed == 0 ? 0 : 3;
}

int cmd_percolate(const SimConfig& cfg, const std::string& input, const std::string& name) {
  const ModelParams params = cfg.model();
  const std::regex tag(R"(L([0-9.eE+-]+)_n([0-9.eE+-]+)_s([0-9]+))");
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(input))
    if (e.is_regular_file() && e.path().extension() == ".vnf" &&
        (name == "*" || e.path().filename() == name))
      files.push_back(e.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) throw EmptyEnsemble("no snapshots named " + name + " under " + input);
  std::vector<RealizationRow> rows;
  for (const auto& f : files) {
    const Snapshot snap = read_snapshot(f);
    const ScalarField& n = snap.field("n");
    const double scale = params.resolved(snap.grid.dims()).packing_scale(snap.grid.dims());
    RealizationRow row = analyse_field(n, scale, cfg.n_thresh(), cfg.span());
    std::smatch m;
    const std::string where = f.parent_path().filename().string() + "/" + f.stem().string();
    if (std::regex_search(where, m, tag)) {
      row.L = std::stod(m[1]);
      row.n_bar = std::stod(m[2]);
      row.seed = std::stoull(m[3]);
    } else {
      row.L = snap.grid.length(0);
      row.n_bar = std::round(integrate(n)) / snap.grid.box_volume();
    }
    rows.push_back(row);
  }
  write_tables(cfg.out(), rows);
  std::cout << "analysed " << rows.size() << " snapshots\n";
  return 0;
}

int cmd_collapse(const SimConfig& cfg, const std::string& table_path) {
  std::ifstream in(table_path);
  if (!in) throw ConfigError("cannot open " + table_path);
  const auto table = read_pi_csv(in);
  FitOptions fo;
  fo.nu_min = cfg.real("nu_min");
  fo.nu_max = cfg.real("nu_max");
  const ScalingFit fit = fit_scaling(table, fo);
  const fs::path dir = cfg.out();
  fs::create_directories(dir);
  std::ofstream c(dir / "collapse.csv");
  write_collapse_csv(c, table, fit);
  std::ofstream s(dir / "fit.txt");
  write_fit_summary(s, fit);
  write_fit_summary(std::cout, fit);
  if (fit.nu_at_bound) std::cerr << "warning: nu reached its upper bound; no finite-size collapse\n";
  return 0;
}

int cmd_spectrum(SimConfig cfg, const std::string& source) {
  cfg.set("saturation", "false");
  const Grid grid = cfg.grid();
  const ModelParams params = cfg.model();
  ScalarField n;
  if (source == "noise") {
    n = random_field(grid, 0.0, 2.0 * cfg.density(), cfg.seed());
  } else if (source == "bumps") {
    n = seed_initial_state(grid, params, cfg.density(), cfg.seed()).n;
  } else {
    throw ConfigError("--source must be noise or bumps");
  }
  const auto rows = steady_response_spectrum(n, params);
  const fs::path dir = cfg.out();
  fs::create_directories(dir);
  std::ofstream out(dir / "spectrum.csv");
  write_spectrum_csv(out, rows);
  const double r0 = predicted_scale(params);
  std::cout << "modes=" << rows.size() << " r0=" << r0 << " mm\nwrote "
            << (dir / "spectrum.csv").string() << '\n';
  return 0;
}

int cmd_bench(const SimConfig& cfg, long steps, const std::vector<int>& counts) {
  const Grid grid = cfg.grid();
  const ModelParams params = cfg.model().resolved(grid.dims());
  const SimState init = seed_initial_state(grid, params, cfg.density(), cfg.seed());
  const auto rows = measure_scaling(init, cfg.step_options(), steps, counts);
  const fs::path dir = cfg.out();
  fs::create_directories(dir);
  std::ofstream out(dir / "bench.csv");
  out << "workers,seconds,seconds_per_step,speedup,identical\n";
  for (const auto& r : rows) {
    out << r.workers << ',' << r.seconds << ',' << r.seconds / steps << ',' << r.speedup << ','
        << (r.identical ? 1 : 0) << '\n';
    std::cout << "workers=" << r.workers << " seconds=" << r.seconds << " speedup=" << r.speedup
              << " identical=" << (r.identical ? "yes" : "no") << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vasnet: chemotaxis network formation solver and percolation analysis"};
  app.require_subcommand(1);

  Common sim_c, ens_c, perc_c, col_c, spec_c, bench_c;
  auto* simulate = app.add_subcommand("simulate", "one run to stationarity");
  add_config_flags(simulate, sim_c);
  auto* ensemble = app.add_subcommand("ensemble", "sweep densities, box sizes and seeds");
  add_config_flags(ensemble, ens_c);

  auto* percolate = app.add_subcommand("percolate", "percolation tables from a snapshot directory");
  add_config_flags(percolate, perc_c);
  std::string input = "out", snap_name = "final.vnf";
  percolate->add_option("--input", input, "directory searched recursively for snapshots");
  percolate->add_option("--name", snap_name, "snapshot file name to analyse (* for every .vnf)");

  auto* collapse = app.add_subcommand("collapse", "fit n_c and nu to a percolation table");
  add_config_flags(collapse, col_c);
  std::string table = "out/pi.csv";
  collapse->add_option("--table", table, "Pi table (L,n_bar,realizations,percolating,pi[,stderr])");

  auto* spectrum = app.add_subcommand("spectrum", "steady chemoattractant response per Fourier mode");
  add_config_flags(spectrum, spec_c);
  std::string source = "noise";
  spectrum->add_option("--source", source, "frozen density: noise (uniform in [0, 2 density)) or bumps");

  auto* bench = app.add_subcommand("bench", "time steps for several worker counts");
  add_config_flags(bench, bench_c);
  long steps = 200;
  std::vector<int> counts{1, 2, 4};
  bench->add_option("--steps", steps, "steps per measurement");
  bench->add_option("--worker-counts", counts, "worker counts to time")->delimiter(',');

  CLI11_PARSE(app, argc, argv);
  try {
    if (*simulate) return cmd_simulate(resolve(sim_c));
    if (*ensemble) return cmd_ensemble(resolve(ens_c));
    if (*percolate) return cmd_percolate(resolve(perc_c), input, snap_name);
    if (*collapse) return cmd_collapse(resolve(col_c), table);
    if (*spectrum) return cmd_spectrum(resolve(spec_c), source);
    if (*bench) return cmd_bench(resolve(bench_c), steps, counts);
  } catch (const vasnet::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
