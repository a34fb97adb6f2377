#pragma once

#include <array>
#include <limits>
#include <memory>
#include <vector>

#include "vasnet/chemo.hpp"
#include "vasnet/decomposition.hpp"
#include "vasnet/limiter.hpp"
#include "vasnet/relaxation.hpp"
#include "vasnet/state.hpp"
#include "vasnet/thread_team.hpp"

namespace vasnet {

// euler: one transport stage per step (the relaxed update as written).
// heun: two semi-discrete stages averaged, sources re-evaluated on the second stage.
enum class TimeScheme { euler, heun };

TimeScheme parse_time_scheme(const std::string& name);
std::string to_string(TimeScheme s);

struct StepOptions {
  Limiter limiter = Limiter::van_leer;
  double cfl = 0.9;               // target lambda * sqrt(max a)
  double wave_safety = 1.1;       // sqrt(a) = safety * max(|v| + pressure speed)
  double diffusion_safety = 0.9;  // fraction of the explicit diffusion limit
  TimeScheme time_scheme = TimeScheme::euler;
  DiffusionScheme diffusion = DiffusionScheme::exact_decay;
  bool alternate_axes = true;
  double clip_abort_fraction = 1e-6;  // of the initial mass
};

// Subcharacteristic squared speeds for the density/momentum system:
// a = (safety * max_cells(|v_axis| + sqrt(m phi'(m))))^2 with m the packing
// density, floored at kMinWaveSpeedSquared. Same value for every component.
// Throws NonFiniteState on NaN/Inf input.
WaveSpeeds choose_wave_speeds(const ScalarField& n, const VectorField& p,
                              const ModelParams& params, double safety);

struct StepReport {
  double dt = 0.0;
  std::array<double, 3> a{0.0, 0.0, 0.0};
  double min_density = 0.0;   // before clipping
  double clipped_mass = 0.0;  // this step
};

// Domain-decomposed integrator for the full system. Each worker owns one
// block; every phase reads only halo data filled before it, so results are
// bit-identical for any worker count.
class Simulation {
 public:
  Simulation(const SimState& initial, const StepOptions& opts, int workers = 1);
  ~Simulation();
  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  // Largest dt allowed by the transport CFL target and the diffusion limit.
  double stable_dt();

  // Transport + sources, then diffusion-reaction, with
  // dt = min(stable_dt(), dt_max).
  StepReport step(double dt_max = std::numeric_limits<double>::infinity());

  // Transport and momentum sources only, with a caller-chosen dt (c frozen).
  // Throws CflViolation when dt breaks the CFL bound.
  StepReport hyperbolic_step(double dt);

  const SimState& state();
  double time() const { return time_; }
  long steps() const { return step_; }
  double clipped_total() const { return clipped_total_; }
  const Decomposition& decomposition() const { return decomp_; }
  int workers() const { return team_.size(); }

 private:
  struct Block;

  void exchange(bool include_c);
  std::array<double, 3> reduce_speeds();
  void transport(double dt, const std::array<double, 3>& a, const std::vector<int>& order);
  void sources();
  void finish(double dt, StepReport& report);

  SimState state_;
  bool state_dirty_ = false;
  StepOptions opts_;
  ModelParams params_;
  Decomposition decomp_;
  ThreadTeam team_;
  std::vector<std::unique_ptr<Block>> blocks_;
  double time_ = 0.0;
  long step_ = 0;
  double initial_mass_ = 0.0;
  double clipped_total_ = 0.0;
};

// One dimensionally split transport step with sources on a copy of state.
// The sweep order alternates with state.step; c is held fixed.
SimState split_step(const SimState& state, double dt, const StepOptions& opts = {});

}  // namespace vasnet
