#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "vasnet/grid.hpp"
#include "vasnet/limiter.hpp"

namespace vasnet {

// Conserved components u, all on one grid.
using Components = std::vector<ScalarField>;

// Writes F_axis(u) into w for every cell, ghosts included.
using FluxFunction = std::function<void(const Components& u, int axis, Components& w)>;

// Writes the non-stiff source g(u) into g for every interior cell.
using SourceFunction = std::function<void(const Components& u, Components& g)>;

// Squared characteristic speeds a of the relaxation system: one entry per
// component on each active axis. Every entry is positive.
struct WaveSpeeds {
  std::array<std::vector<double>, 3> a;

  static WaveSpeeds uniform(int dims, int components, double a_value);
  static WaveSpeeds uniform(int dims, int components, std::array<double, 3> a_per_axis);
  double max(int axis) const;
};

inline constexpr double kMinWaveSpeedSquared = 1e-12;

// fully_discrete: limited correction weighted by (1 - lambda c), one Euler stage per step.
// semi_discrete: weight 1/4 independent of dt, for two-stage Heun integration. The
// fully discrete update keeps an O(dt (a - f'^2)) relaxation error; the Heun form does not.
enum class FluxForm { fully_discrete, semi_discrete };

// Relaxed limited flux for u at interface i+1/2 from the characteristic
// variables W+ = w + sqrt(a) u (cells i-1, i, i+1) and W- = w - sqrt(a) u
// (cells i, i+1, i+2). corr = (1 - lambda sqrt(a)) / 4.
template <Limiter L>
inline double characteristic_flux(double wp_m, double wp_0, double wp_p, double wm_0, double wm_p,
                                  double wm_pp, double corr) {
  const double dp = wp_p - wp_0;
  const double dm = wm_p - wm_0;
  return 0.5 * (wp_0 + wm_p) +
         corr * (limiter_ratio<L>(wp_0 - wp_m, dp) * dp - limiter_ratio<L>(wm_pp - wm_p, dm) * dm);
}

// Interface fluxes of u on a padded 1D line (kGhostWidth ghosts each side).
// Returns N+1 values: entry m is the flux through interface m - 1/2.
std::vector<double> limited_flux_1d(std::span<const double> char_plus,
                                    std::span<const double> char_minus, double a, double lambda,
                                    Limiter lim);

// Applies u -= dt/h (Phi_{i+1/2} - Phi_{i-1/2}) along one axis for every
// component, using relaxed w = F(u) already evaluated on ghosts. flux is
// scratch storage on the same grid.
void transport_sweep(Components& u, const Components& w, int axis, std::span<const double> a,
                     double dt, Limiter lim, ScalarField& flux,
                     FluxForm form = FluxForm::fully_discrete);

// lambda * sqrt(max a) on the worst axis.
double cfl_number(const Grid& grid, const WaveSpeeds& speeds, double dt);
// Largest dt with cfl_number(dt) <= target.
double cfl_time_step(const Grid& grid, const WaveSpeeds& speeds, double target);
// Throws CflViolation when cfl_number exceeds one.
void check_cfl(const Grid& grid, const WaveSpeeds& speeds, double dt);

// One relaxed step on a 1D grid: halos, w := F(u), limited transport over
// dt, plus dt * g(u^n). Conserves sum u to roundoff when g is absent.
void relaxed_step_1d(Components& u, const FluxFunction& flux, const SourceFunction& source,
                     const WaveSpeeds& speeds, double dt, Limiter lim);

// Two semi-discrete stages averaged (Heun). TVD only for CFL <= 1/2.
void relaxed_heun_step_1d(Components& u, const FluxFunction& flux, const SourceFunction& source,
                          const WaveSpeeds& speeds, double dt, Limiter lim);

// Sweep order for a given step: x,y,z on even steps, z,y,x on odd ones.
std::vector<int> axis_order(int dims, long step, bool alternate = true);

// Dimensionally split relaxed step for a generic system: g is evaluated on
// u^n, each axis is swept in order, then dt * g is added.
void split_transport(Components& u, const FluxFunction& flux, const SourceFunction& source,
                     const WaveSpeeds& speeds, double dt, Limiter lim,
                     std::span<const int> order, FluxForm form = FluxForm::fully_discrete);

// Total variation of the interior of a 1D field (periodic).
double total_variation(const ScalarField& f);

}  // namespace vasnet
