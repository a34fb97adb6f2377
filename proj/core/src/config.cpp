#include "vasnet/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "vasnet/errors.hpp"

namespace vasnet {

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = {
      {"domain", "dims", "3", "spatial dimension (1-3)"},
      {"domain", "grid", "64", "cells per axis: N or Nx,Ny,Nz"},
      {"domain", "length", "0.5", "box side in mm: L or Lx,Ly,Lz"},

      {"model", "preset", "tissue", "tissue (D=1e-3, tau=4000) or growth_factor (D=1e-5, tau=3840)"},
      {"model", "D", "preset", "chemoattractant diffusivity, mm^2/s"},
      {"model", "tau", "preset", "chemoattractant lifetime, s"},
      {"model", "mu0", "1e-11", "chemotactic sensitivity"},
      {"model", "alpha0", "1", "emission rate, 1/s"},
      {"model", "beta0", "1e-3", "friction, 1/s"},
      {"model", "c0", "auto", "saturation threshold (auto: twice the isolated-cell peak)"},
      {"model", "n0_pack", "1", "close packing, packing-density units"},
      {"model", "Bp", "1e-3", "pressure amplitude"},
      {"model", "Cp", "3", "pressure exponent"},
      {"model", "sigma", "0.015", "cell bump width, mm"},
      {"model", "saturation", "true", "enable the tanh saturation of mu, alpha, beta"},
      {"model", "packing_volume", "auto", "volume of one cell, mm^d (auto: d-ball of radius sigma)"},

      {"scheme", "limiter", "vanleer", "minmod, vanleer, mc, upwind, laxwendroff"},
      {"scheme", "cfl", "0.9", "CFL target"},
      {"scheme", "wave_safety", "1.1", "factor on the largest signal speed"},
      {"scheme", "diffusion_safety", "0.9", "fraction of the explicit reaction-diffusion limit"},
      {"scheme", "time_scheme", "euler", "euler or heun (second order; TVD for cfl <= 0.5)"},
      {"scheme", "diffusion", "exact_decay", "exact_decay or explicit"},
      {"scheme", "alternate_axes", "true", "reverse the sweep order on odd steps"},
      {"scheme", "clip_abort_fraction", "1e-6", "abort when clipped mass exceeds this share"},

      {"run", "seed", "1", "random seed"},
      {"run", "density", "2500", "mean density n_bar, cells/mm^d"},
      {"run", "t_end", "inf", "stop time, s"},
      {"run", "dt_max", "inf", "upper bound on the time step, s"},
      {"run", "max_steps", "1000000", "step cap"},
      {"run", "freeze", "true", "stop when kinetic energy stays below freeze_fraction of its peak"},
      {"run", "freeze_fraction", "1e-4", "freeze threshold relative to the peak"},
      {"run", "freeze_window", "50", "consecutive quiet steps"},
      {"run", "diag_every", "1", "steps between diagnostics rows"},
      {"run", "snapshot_every", "0", "steps between snapshots (0: final only)"},
      {"run", "workers", "1", "threads per run"},
      {"run", "out", "out", "output directory"},

      {"percolation", "n_thresh", "0.35", "occupancy threshold on packing density"},
      {"percolation", "span", "any", "spanning rule: any, all, x, y, z"},

      {"ensemble", "densities", "1500,2500,3500", "mean densities to sweep"},
      {"ensemble", "lengths", "0.5", "box sides to sweep, mm (spacing of [domain] kept)"},
      {"ensemble", "realizations", "5", "seeds per point: seed .. seed + realizations - 1"},
      {"ensemble", "parallel_runs", "1", "realizations run concurrently"},

      {"fit", "nu_min", "0.3", "lower bound of the exponent search"},
      {"fit", "nu_max", "3", "upper bound of the exponent search"},
  };
  return keys;
}

namespace {

const ConfigKey* find_key(const std::string& name) {
  for (const auto& k : config_keys())
    if (k.name == name) return &k;
  return nullptr;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_real(const std::string& name, const std::string& v) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(v, &used);
  } catch (const std::logic_error&) {
    throw ConfigError(name + ": '" + v + "' is not a number");
  }
  if (used != v.size()) throw ConfigError(name + ": '" + v + "' is not a number");
  return x;
}

}  // namespace

SimConfig::SimConfig() {
  for (const auto& k : config_keys()) values_[k.name] = k.default_value;
}

SimConfig SimConfig::parse(std::istream& in) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(e.what());
  }
  SimConfig cfg;
  for (const auto& [section, body] : tree) {
    if (body.empty()) {
      cfg.set(section, body.data());  // top-level key
      continue;
    }
    for (const auto& [name, value] : body) {
      const ConfigKey* k = find_key(name);
      if (!k) throw ConfigError("unknown key '" + name + "' in [" + section + "]");
      if (k->section != section)
        throw ConfigError("key '" + name + "' belongs in [" + k->section + "], not [" + section + "]");
      cfg.set(name, value.data());
    }
  }
  return cfg;
}

SimConfig SimConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  return parse(in);
}

void SimConfig::save(std::ostream& out) const {
  std::string section;
  for (const auto& k : config_keys()) {
    if (k.section != section) {
      if (!section.empty()) out << '\n';
      section = k.section;
      out << '[' << section << "]\n";
    }
    out << "; " << k.help << '\n' << k.name << " = " << values_.at(k.name) << '\n';
  }
}

void SimConfig::set(const std::string& name, const std::string& value) {
  if (!find_key(name)) throw ConfigError("unknown key '" + name + "'");
  values_[name] = value;
}

const std::string& SimConfig::get(const std::string& name) const {
  auto it = values_.find(name);
  if (it == values_.end()) throw ConfigError("unknown key '" + name + "'");
  return it->second;
}

double SimConfig::real(const std::string& name) const { return to_real(name, get(name)); }

long SimConfig::integer(const std::string& name) const {
  const double x = real(name);
  if (x != std::floor(x) || std::abs(x) > 9e15)
    throw ConfigError(name + ": '" + get(name) + "' is not an integer");
  return static_cast<long>(x);
}

bool SimConfig::flag(const std::string& name) const {
  std::string v = get(name);
  std::transform(v.begin(), v.end(), v.begin(), [](unsigned char c) { return std::tolower(c); });
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ConfigError(name + ": '" + get(name) + "' is not a boolean");
}

std::vector<double> SimConfig::reals(const std::string& name) const {
  std::vector<double> out;
  for (const auto& item : split_list(get(name))) out.push_back(to_real(name, item));
  if (out.empty()) throw ConfigError(name + ": empty list");
  return out;
}

int SimConfig::dims() const {
  const long d = integer("dims");
  if (d < 1 || d > 3) throw ConfigError("dims must be 1, 2 or 3");
  return static_cast<int>(d);
}

namespace {

template <class T>
std::array<T, 3> per_axis(const std::vector<double>& v, int dims, const std::string& name, T inactive) {
  if (v.size() != 1 && static_cast<int>(v.size()) != dims)
    throw ConfigError(name + ": give one value or one per axis");
  std::array<T, 3> out{inactive, inactive, inactive};
  for (int a = 0; a < dims; ++a) out[a] = static_cast<T>(v.size() == 1 ? v[0] : v[a]);
  return out;
}

}  // namespace

std::array<int, 3> SimConfig::cells() const {
  std::string g = get("grid");
  std::replace(g.begin(), g.end(), 'x', ',');
  std::vector<double> v;
  for (const auto& item : split_list(g)) v.push_back(to_real("grid", item));
  for (double x : v)
    if (x < 1 || x != std::floor(x)) throw ConfigError("grid: cell counts must be positive integers");
  return per_axis<int>(v, dims(), "grid", 1);
}

std::array<double, 3> SimConfig::lengths() const {
  return per_axis<double>(reals("length"), dims(), "length", 1.0);
}

Grid SimConfig::grid() const { return Grid(dims(), cells(), lengths()); }

Grid SimConfig::grid_for_length(double L) const {
  const Grid ref = grid();
  std::array<int, 3> n{1, 1, 1};
  std::array<double, 3> len{1.0, 1.0, 1.0};
  for (int a = 0; a < ref.dims(); ++a) {
    n[a] = std::max(1, static_cast<int>(std::lround(L / ref.spacing(a))));
    len[a] = L;
  }
  return Grid(ref.dims(), n, len);
}

ModelParams SimConfig::model() const {
  const std::string preset = get("preset");
  ModelParams p;
  if (preset == "tissue")
    p = ModelParams::tissue_preset();
  else if (preset == "growth_factor")
    p = ModelParams::growth_factor_preset();
  else
    throw ConfigError("preset: unknown '" + preset + "' (tissue, growth_factor)");
  if (get("D") != "preset") p.D = real("D");
  if (get("tau") != "preset") p.tau = real("tau");
  p.mu0 = real("mu0");
  p.alpha0 = real("alpha0");
  p.beta0 = real("beta0");
  if (get("c0") != "auto") p.c0 = real("c0");
  p.n0_pack = real("n0_pack");
  p.Bp = real("Bp");
  p.Cp = real("Cp");
  p.sigma = real("sigma");
  p.saturation_enabled = flag("saturation");
  if (get("packing_volume") != "auto") p.packing_volume = real("packing_volume");
  p.validate();
  return p;
}

StepOptions SimConfig::step_options() const {
  StepOptions s;
  s.limiter = parse_limiter(get("limiter"));
  s.cfl = real("cfl");
  s.wave_safety = real("wave_safety");
  s.diffusion_safety = real("diffusion_safety");
  s.time_scheme = parse_time_scheme(get("time_scheme"));
  s.diffusion = parse_diffusion_scheme(get("diffusion"));
  s.alternate_axes = flag("alternate_axes");
  s.clip_abort_fraction = real("clip_abort_fraction");
  if (!(s.cfl > 0.0 && s.cfl <= 1.0)) throw ConfigError("cfl must lie in (0, 1]");
  if (s.wave_safety < 1.0) throw ConfigError("wave_safety must be >= 1");
  if (!(s.diffusion_safety > 0.0 && s.diffusion_safety <= 1.0))
    throw ConfigError("diffusion_safety must lie in (0, 1]");
  return s;
}

RunOptions SimConfig::run_options() const {
  RunOptions r;
  r.step = step_options();
  r.workers = workers();
  r.t_end = real("t_end");
  r.dt_max = real("dt_max");
  r.max_steps = integer("max_steps");
  r.freeze = flag("freeze");
  r.freeze_fraction = real("freeze_fraction");
  r.freeze_window = static_cast<int>(integer("freeze_window"));
  r.diag_every = integer("diag_every");
  r.snapshot_every = integer("snapshot_every");
  r.out_dir = out();
  if (!(r.dt_max > 0.0)) throw ConfigError("dt_max must be positive");
  if (r.max_steps < 0) throw ConfigError("max_steps must be non-negative");
  return r;
}

std::uint64_t SimConfig::seed() const {
  const std::string& v = get("seed");
  try {
    std::size_t used = 0;
    const unsigned long long s = std::stoull(v, &used, 0);
    if (used != v.size() || v.front() == '-') throw std::invalid_argument(v);
    return s;
  } catch (const std::logic_error&) {
    throw ConfigError("seed: '" + v + "' is not an unsigned 64-bit integer");
  }
}

double SimConfig::density() const {
  const double d = real("density");
  if (!(d >= 0.0)) throw ConfigError("density must be non-negative");
  return d;
}

int SimConfig::workers() const {
  const long w = integer("workers");
  if (w < 1) throw ConfigError("workers must be >= 1");
  return static_cast<int>(w);
}

std::string SimConfig::out() const { return get("out"); }

double SimConfig::n_thresh() const { return real("n_thresh"); }
SpanRule SimConfig::span() const { return parse_span_rule(get("span")); }
std::vector<double> SimConfig::densities() const { return reals("densities"); }
std::vector<double> SimConfig::box_lengths() const { return reals("lengths"); }

int SimConfig::realizations() const {
  const long r = integer("realizations");
  if (r < 1) throw ConfigError("realizations must be >= 1");
  return static_cast<int>(r);
}

int SimConfig::parallel_runs() const {
  const long r = integer("parallel_runs");
  if (r < 1) throw ConfigError("parallel_runs must be >= 1");
  return static_cast<int>(r);
}

}  // namespace vasnet
