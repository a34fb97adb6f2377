#include "vasnet/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vasnet/errors.hpp"

namespace vasnet {

TimeScheme parse_time_scheme(const std::string& name) {
  if (name == "euler") return TimeScheme::euler;
  if (name == "heun") return TimeScheme::heun;
  throw ConfigError("unknown time scheme '" + name + "'");
}

std::string to_string(TimeScheme s) { return s == TimeScheme::euler ? "euler" : "heun"; }

namespace {

// max over interior of |v_axis| + pressure signal speed, per axis.
// Returns false if any value is non-finite.
bool signal_speeds(const Components& u, const ModelParams& prm, std::array<double, 3>& out) {
  const Grid& g = u[0].grid();
  const int d = g.dims();
  const double eps = prm.vacuum_density(d);
  const double scale = prm.packing_scale(d);
  out = {0.0, 0.0, 0.0};
  bool finite = true;
  for (int k = 0; k < g.cells(2); ++k)
    for (int j = 0; j < g.cells(1); ++j) {
      const std::size_t row = g.index(0, j, k);
      for (int i = 0; i < g.cells(0); ++i) {
        const std::size_t m = row + i;
        const double n = u[0].data()[m];
        if (!std::isfinite(n)) finite = false;
        const double packing = n * scale;
        const double cs = packing > prm.n0_pack ? std::sqrt(packing * pressure_slope(packing, prm)) : 0.0;
        for (int a = 0; a < d; ++a) {
          const double pa = u[1 + a].data()[m];
          if (!std::isfinite(pa)) finite = false;
          const double v = std::abs(recover_velocity(n, pa, eps));
          out[a] = std::max(out[a], v + cs);
        }
      }
    }
  return finite;
}

double squared_speed(double safety, double speed) {
  const double s = safety * speed;
  return std::max(s * s, kMinWaveSpeedSquared);
}

}  // namespace

WaveSpeeds choose_wave_speeds(const ScalarField& n, const VectorField& p,
                              const ModelParams& params, double safety) {
  if (safety < 1.0) throw ConfigError("wave speed safety must be >= 1");
  Components u;
  u.push_back(n);
  for (int a = 0; a < p.size(); ++a) u.push_back(p[a]);
  std::array<double, 3> speeds{};
  if (!signal_speeds(u, params, speeds)) throw NonFiniteState("density or momentum not finite");
  const int d = n.grid().dims();
  WaveSpeeds out;
  for (int a = 0; a < d; ++a) out.a[a].assign(1 + d, squared_speed(safety, speeds[a]));
  return out;
}

struct Simulation::Block {
  Grid grid;
  std::array<int, 3> offset{};
  Components u;
  Components u0;
  Components w;
  Components src;
  ScalarField c, c_next, flux, phi;
  std::array<double, 3> speed{};
  bool finite = true;
  double min_n = 0.0;
  std::vector<std::pair<std::size_t, double>> clips;

  explicit Block(const Subdomain& s) : grid(s.grid), offset(s.offset) {
    const int d = grid.dims();
    for (int m = 0; m <= d; ++m) {
      u.emplace_back(grid);
      w.emplace_back(grid);
    }
    for (int m = 0; m < d; ++m) src.emplace_back(grid);
    c = ScalarField(grid);
    c_next = ScalarField(grid);
    flux = ScalarField(grid);
    phi = ScalarField(grid);
  }

  void relaxed_flux(int axis, const ModelParams& prm) {
    const int d = grid.dims();
    const double eps = prm.vacuum_density(d);
    const std::size_t count = grid.padded_count();
    const double* n = u[0].data();
    const double* pa = u[1 + axis].data();
    double* w0 = w[0].data();
    for (std::size_t m = 0; m < count; ++m) w0[m] = pa[m];
    for (int b = 0; b < d; ++b) {
      const double* pb = u[1 + b].data();
      double* wb = w[1 + b].data();
      for (std::size_t m = 0; m < count; ++m) wb[m] = pb[m] * recover_velocity(n[m], pa[m], eps);
    }
  }

  void momentum_sources(const ModelParams& prm) {
    const int d = grid.dims();
    const double scale = prm.packing_scale(d);
    const double* n = u[0].data();
    const std::size_t count = grid.padded_count();
    double* ph = phi.data();
    bool any_pressure = false;
    for (std::size_t m = 0; m < count; ++m) {
      ph[m] = pressure_phi(n[m] * scale, prm);
      any_pressure |= ph[m] != 0.0;
    }
    const bool sat = prm.saturation_enabled;
    const double c0 = sat ? *prm.c0 : 0.0;
    const double* cv = c.data();
    for (int k = 0; k < grid.cells(2); ++k)
      for (int j = 0; j < grid.cells(1); ++j) {
        const std::size_t row = grid.index(0, j, k);
        for (int i = 0; i < grid.cells(0); ++i) {
          const std::size_t m = row + i;
          const double t = sat ? std::tanh(cv[m] - c0) : 0.0;
          const double mu = sat ? prm.mu0 * (1.0 - t) : prm.mu0;
          const double beta = sat ? prm.beta0 * (1.0 + t) : prm.beta0;
          for (int a = 0; a < d; ++a) {
            const std::ptrdiff_t s = grid.stride(a);
            const double inv = 0.5 / grid.spacing(a);
            const double gc = (cv[m + s] - cv[m - s]) * inv;
            const double gp = any_pressure ? (ph[m + s] - ph[m - s]) * inv : 0.0;
            src[a].data()[m] = n[m] * mu * gc - n[m] * gp - beta * u[1 + a].data()[m];
          }
        }
      }
  }

  // |p_axis| <= sqrt(a) n on every cell, ghosts included, before a sweep
  // along axis. Only cells far below the velocity regularisation scale (or
  // emptied by an earlier sweep of the same step) are touched; elsewhere
  // |p| / n <= max |v| < sqrt(a). Keeps the upwind part of the update positive.
  void cap_momentum(int axis, double a) {
    const double* n = u[0].data();
    const std::size_t count = grid.padded_count();
    const double c = std::sqrt(a);
    double* p = u[1 + axis].data();
    for (std::size_t m = 0; m < count; ++m) {
      const double lim = c * std::max(n[m], 0.0);
      p[m] = std::clamp(p[m], -lim, lim);
    }
  }

  void add_sources(double dt) {
    for (int a = 0; a < grid.dims(); ++a) {
      double* p = u[1 + a].data();
      const double* s = src[a].data();
      for_each_cell(grid, [&](int i, int j, int k) {
        const std::size_t m = grid.index(i, j, k);
        p[m] += dt * s[m];
      });
    }
  }

  void clip(const Grid& global) {
    clips.clear();
    min_n = std::numeric_limits<double>::infinity();
    double* n = u[0].data();
    for_each_cell(grid, [&](int i, int j, int k) {
      const std::size_t m = grid.index(i, j, k);
      min_n = std::min(min_n, n[m]);
      if (n[m] < 0.0) {
        clips.emplace_back(global.index(i + offset[0], j + offset[1], k + offset[2]), -n[m]);
        n[m] = 0.0;
        for (int a = 0; a < grid.dims(); ++a) u[1 + a].data()[m] = 0.0;
      }
    });
  }
};

Simulation::Simulation(const SimState& initial, const StepOptions& opts, int workers)
    : state_(initial),
      opts_(opts),
      params_(initial.params.resolved(initial.grid.dims())),
      decomp_(initial.grid, workers),
      team_(decomp_.size()),
      time_(initial.time),
      step_(initial.step) {
  if (!(opts.cfl > 0.0 && opts.cfl <= 1.0)) throw ConfigError("cfl target must lie in (0, 1]");
  if (opts.wave_safety < 1.0) throw ConfigError("wave safety must be >= 1");
  state_.params = params_;
  for (int r = 0; r < decomp_.size(); ++r) blocks_.push_back(std::make_unique<Block>(decomp_.block(r)));
  const int d = state_.grid.dims();
  team_.run([&](int r) {
    Block& b = *blocks_[r];
    scatter(decomp_, r, state_.n, b.u[0]);
    for (int a = 0; a < d; ++a) scatter(decomp_, r, state_.p[a], b.u[1 + a]);
    scatter(decomp_, r, state_.c, b.c);
  });
  initial_mass_ = integrate(state_.n);
}

Simulation::~Simulation() = default;

void Simulation::exchange(bool include_c) {
  const int d = state_.grid.dims();
  const int nfields = d + 1 + (include_c ? 1 : 0);
  std::vector<std::vector<ScalarField*>> ptrs(nfields, std::vector<ScalarField*>(blocks_.size()));
  for (std::size_t r = 0; r < blocks_.size(); ++r) {
    for (int m = 0; m <= d; ++m) ptrs[m][r] = &blocks_[r]->u[m];
    if (include_c) ptrs[d + 1][r] = &blocks_[r]->c;
  }
  for (int axis = 0; axis < d; ++axis)
    team_.run([&](int r) {
      for (int f = 0; f < nfields; ++f) exchange_axis(decomp_, r, axis, ptrs[f]);
    });
}

std::array<double, 3> Simulation::reduce_speeds() {
  team_.run([&](int r) {
    Block& b = *blocks_[r];
    b.finite = signal_speeds(b.u, params_, b.speed);
  });
  std::array<double, 3> a{};
  const int d = state_.grid.dims();
  for (int ax = 0; ax < d; ++ax) {
    double m = 0.0;
    for (const auto& b : blocks_) {
      if (!b->finite) throw NonFiniteState("density or momentum not finite at t = " + std::to_string(time_));
      m = std::max(m, b->speed[ax]);
    }
    a[ax] = squared_speed(opts_.wave_safety, m);
  }
  return a;
}

void Simulation::transport(double dt, const std::array<double, 3>& a, const std::vector<int>& order) {
  const int d = state_.grid.dims();
  const FluxForm form =
      opts_.time_scheme == TimeScheme::heun ? FluxForm::semi_discrete : FluxForm::fully_discrete;
  bool first = true;
  for (int axis : order) {
    if (!first) exchange(false);
    first = false;
    const std::vector<double> speeds(d + 1, a[axis]);
    team_.run([&](int r) {
      Block& b = *blocks_[r];
      b.cap_momentum(axis, a[axis]);
      b.relaxed_flux(axis, params_);
      transport_sweep(b.u, b.w, axis, speeds, dt, opts_.limiter, b.flux, form);
    });
  }
}

void Simulation::sources() {
  team_.run([&](int r) { blocks_[r]->momentum_sources(params_); });
}

void Simulation::finish(double dt, StepReport& report) {
  team_.run([&](int r) { blocks_[r]->clip(state_.grid); });
  double min_n = std::numeric_limits<double>::infinity();
  std::vector<std::pair<std::size_t, double>> clips;
  for (const auto& b : blocks_) {
    min_n = std::min(min_n, b->min_n);
    clips.insert(clips.end(), b->clips.begin(), b->clips.end());
  }
  std::sort(clips.begin(), clips.end());
  double clipped = 0.0;
  for (const auto& [idx, v] : clips) clipped += v;
  clipped *= state_.grid.cell_volume();
  report.min_density = min_n;
  report.clipped_mass = clipped;
  clipped_total_ += clipped;
  time_ += dt;
  ++step_;
  state_dirty_ = true;
  if (clipped_total_ > opts_.clip_abort_fraction * initial_mass_) {
    std::ostringstream msg;
    msg << "clipped mass " << clipped_total_ << " exceeds " << opts_.clip_abort_fraction
        << " of total " << initial_mass_;
    throw PositivityAbort(msg.str());
  }
}

double Simulation::stable_dt() {
  exchange(false);
  const auto a = reduce_speeds();
  WaveSpeeds ws = WaveSpeeds::uniform(state_.grid.dims(), state_.grid.dims() + 1, a);
  double dt = cfl_time_step(state_.grid, ws, opts_.cfl);
  dt = std::min(dt, opts_.diffusion_safety * chemo_step_limit(state_.grid, params_));
  if (opts_.diffusion == DiffusionScheme::explicit_euler) dt = std::min(dt, params_.tau);
  return dt;
}

StepReport Simulation::step(double dt_max) {
  const int d = state_.grid.dims();
  exchange(true);
  const auto a = reduce_speeds();
  WaveSpeeds ws = WaveSpeeds::uniform(d, d + 1, a);
  double dt = cfl_time_step(state_.grid, ws, opts_.cfl);
  dt = std::min(dt, opts_.diffusion_safety * chemo_step_limit(state_.grid, params_));
  if (opts_.diffusion == DiffusionScheme::explicit_euler) dt = std::min(dt, params_.tau);
  dt = std::min(dt, dt_max);
  if (!(dt > 0.0)) throw ConfigError("non-positive time step");

  StepReport report;
  report.dt = dt;
  report.a = a;
  const auto order = axis_order(d, step_, opts_.alternate_axes);

  sources();
  team_.run([&](int r) {
    Block& b = *blocks_[r];
    diffuse_react_into(b.c, b.u[0], params_, dt, opts_.diffusion, b.c_next);
  });
  if (opts_.time_scheme == TimeScheme::heun)
    team_.run([&](int r) { blocks_[r]->u0 = blocks_[r]->u; });
  transport(dt, a, order);
  team_.run([&](int r) { blocks_[r]->add_sources(dt); });
  if (opts_.time_scheme == TimeScheme::heun) {
    exchange(false);
    sources();
    transport(dt, a, order);
    team_.run([&](int r) {
      Block& b = *blocks_[r];
      b.add_sources(dt);
      for (int m = 0; m <= d; ++m) {
        double* x = b.u[m].data();
        const double* x0 = b.u0[m].data();
        for (std::size_t q = 0; q < b.grid.padded_count(); ++q) x[q] = 0.5 * (x0[q] + x[q]);
      }
    });
  }
  team_.run([&](int r) { std::swap(blocks_[r]->c, blocks_[r]->c_next); });
  finish(dt, report);
  return report;
}

StepReport Simulation::hyperbolic_step(double dt) {
  const int d = state_.grid.dims();
  exchange(true);
  const auto a = reduce_speeds();
  WaveSpeeds ws = WaveSpeeds::uniform(d, d + 1, a);
  check_cfl(state_.grid, ws, dt);
  StepReport report;
  report.dt = dt;
  report.a = a;
  const auto order = axis_order(d, step_, opts_.alternate_axes);
  sources();
  if (opts_.time_scheme == TimeScheme::heun)
    team_.run([&](int r) { blocks_[r]->u0 = blocks_[r]->u; });
  transport(dt, a, order);
  team_.run([&](int r) { blocks_[r]->add_sources(dt); });
  if (opts_.time_scheme == TimeScheme::heun) {
    exchange(false);
    sources();
    transport(dt, a, order);
    team_.run([&](int r) {
      Block& b = *blocks_[r];
      b.add_sources(dt);
      for (int m = 0; m <= d; ++m) {
        double* x = b.u[m].data();
        const double* x0 = b.u0[m].data();
        for (std::size_t q = 0; q < b.grid.padded_count(); ++q) x[q] = 0.5 * (x0[q] + x[q]);
      }
    });
  }
  finish(dt, report);
  return report;
}

const SimState& Simulation::state() {
  if (state_dirty_) {
    const int d = state_.grid.dims();
    team_.run([&](int r) {
      const Block& b = *blocks_[r];
      gather(decomp_, r, b.u[0], state_.n);
      for (int a = 0; a < d; ++a) gather(decomp_, r, b.u[1 + a], state_.p[a]);
      gather(decomp_, r, b.c, state_.c);
    });
    state_.fill_halos();
    state_dirty_ = false;
  }
  state_.time = time_;
  state_.step = step_;
  return state_;
}

SimState split_step(const SimState& state, double dt, const StepOptions& opts) {
  Simulation sim(state, opts, 1);
  sim.hyperbolic_step(dt);
  return sim.state();
}

}  // namespace vasnet
