#include "vasnet/relaxation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "vasnet/errors.hpp"

namespace vasnet {

WaveSpeeds WaveSpeeds::uniform(int dims, int components, double a_value) {
  return uniform(dims, components, {a_value, a_value, a_value});
}

WaveSpeeds WaveSpeeds::uniform(int dims, int components, std::array<double, 3> a_per_axis) {
  WaveSpeeds s;
  for (int ax = 0; ax < dims; ++ax) s.a[ax].assign(components, a_per_axis[ax]);
  return s;
}

double WaveSpeeds::max(int axis) const {
  double m = 0.0;
  for (double v : a[axis]) m = std::max(m, v);
  return m;
}

namespace {

template <Limiter L>
void sweep_component(ScalarField& u, const ScalarField& w, int axis, double a, double dt,
                     ScalarField& flux, FluxForm form) {
  const Grid& g = u.grid();
  const std::ptrdiff_t s = g.stride(axis);
  const double c = std::sqrt(a);
  const double lambda = dt / g.spacing(axis);
  const double corr = form == FluxForm::fully_discrete ? 0.25 * (1.0 - lambda * c) : 0.25;
  const double* uv = u.data();
  const double* wv = w.data();
  double* fv = flux.data();

  std::array<int, 3> lo{0, 0, 0}, hi{g.cells(0), g.cells(1), g.cells(2)};
  lo[axis] = -1;
  for (int k = lo[2]; k < hi[2]; ++k)
    for (int j = lo[1]; j < hi[1]; ++j) {
      const std::size_t row = g.index(lo[0], j, k);
      const double* up = uv + row;
      const double* wp = wv + row;
      double* fp = fv + row;
      const int count = hi[0] - lo[0];
      for (int i = 0; i < count; ++i) {
        const double wp_m = wp[i - s] + c * up[i - s];
        const double wp_0 = wp[i] + c * up[i];
        const double wp_p = wp[i + s] + c * up[i + s];
        const double wm_0 = wp[i] - c * up[i];
        const double wm_p = wp[i + s] - c * up[i + s];
        const double wm_pp = wp[i + 2 * s] - c * up[i + 2 * s];
        fp[i] = characteristic_flux<L>(wp_m, wp_0, wp_p, wm_0, wm_p, wm_pp, corr);
      }
    }

  double* un = u.data();
  for (int k = 0; k < g.cells(2); ++k)
    for (int j = 0; j < g.cells(1); ++j) {
      const std::size_t row = g.index(0, j, k);
      double* up = un + row;
      const double* fp = fv + row;
      for (int i = 0; i < g.cells(0); ++i) up[i] -= lambda * (fp[i] - fp[i - s]);
    }
}

template <Limiter L>
std::vector<double> flux_line(std::span<const double> wp, std::span<const double> wm, double a,
                              double lambda) {
  const std::size_t n = wp.size() - 2 * kGhostWidth;
  const double corr = 0.25 * (1.0 - lambda * std::sqrt(a));
  std::vector<double> out(n + 1);
  // Interface m - 1/2 sits between padded cells m+1 and m+2.
  for (std::size_t m = 0; m <= n; ++m) {
    const std::size_t i = m + kGhostWidth - 1;
    out[m] = characteristic_flux<L>(wp[i - 1], wp[i], wp[i + 1], wm[i], wm[i + 1], wm[i + 2], corr);
  }
  return out;
}

}  // namespace

std::vector<double> limited_flux_1d(std::span<const double> char_plus,
                                    std::span<const double> char_minus, double a, double lambda,
                                    Limiter lim) {
  if (char_plus.size() != char_minus.size() || char_plus.size() < 2 * kGhostWidth + 1)
    throw std::invalid_argument("characteristic lines must be padded and of equal length");
  switch (lim) {
    case Limiter::minmod: return flux_line<Limiter::minmod>(char_plus, char_minus, a, lambda);
    case Limiter::van_leer: return flux_line<Limiter::van_leer>(char_plus, char_minus, a, lambda);
    case Limiter::mc: return flux_line<Limiter::mc>(char_plus, char_minus, a, lambda);
    case Limiter::upwind: return flux_line<Limiter::upwind>(char_plus, char_minus, a, lambda);
    case Limiter::lax_wendroff:
      return flux_line<Limiter::lax_wendroff>(char_plus, char_minus, a, lambda);
  }
  return {};
}

void transport_sweep(Components& u, const Components& w, int axis, std::span<const double> a,
                     double dt, Limiter lim, ScalarField& flux, FluxForm form) {
  if (u.size() != w.size() || u.size() != a.size())
    throw std::invalid_argument("transport_sweep: component count mismatch");
  for (std::size_t m = 0; m < u.size(); ++m) {
    switch (lim) {
      case Limiter::minmod: sweep_component<Limiter::minmod>(u[m], w[m], axis, a[m], dt, flux, form); break;
      case Limiter::van_leer: sweep_component<Limiter::van_leer>(u[m], w[m], axis, a[m], dt, flux, form); break;
      case Limiter::mc: sweep_component<Limiter::mc>(u[m], w[m], axis, a[m], dt, flux, form); break;
      case Limiter::upwind: sweep_component<Limiter::upwind>(u[m], w[m], axis, a[m], dt, flux, form); break;
      case Limiter::lax_wendroff:
        sweep_component<Limiter::lax_wendroff>(u[m], w[m], axis, a[m], dt, flux, form);
        break;
    }
  }
}

double cfl_number(const Grid& grid, const WaveSpeeds& speeds, double dt) {
  double worst = 0.0;
  for (int ax = 0; ax < grid.dims(); ++ax)
    worst = std::max(worst, dt / grid.spacing(ax) * std::sqrt(speeds.max(ax)));
  return worst;
}

double cfl_time_step(const Grid& grid, const WaveSpeeds& speeds, double target) {
  double dt = std::numeric_limits<double>::infinity();
  for (int ax = 0; ax < grid.dims(); ++ax) {
    const double amax = speeds.max(ax);
    if (amax > 0.0) dt = std::min(dt, target * grid.spacing(ax) / std::sqrt(amax));
  }
  return dt;
}

void check_cfl(const Grid& grid, const WaveSpeeds& speeds, double dt) {
  const double cfl = cfl_number(grid, speeds, dt);
  if (cfl > 1.0 + 1e-12) {
    std::ostringstream msg;
    msg << "lambda*sqrt(max a) = " << cfl << " > 1";
    throw CflViolation(msg.str());
  }
}

namespace {

void add_source(Components& u, const Components& g, double dt) {
  for (std::size_t m = 0; m < u.size(); ++m) {
    const Grid& grid = u[m].grid();
    for_each_cell(grid, [&](int i, int j, int k) { u[m](i, j, k) += dt * g[m](i, j, k); });
  }
}

Components like(const Components& u) {
  Components out;
  out.reserve(u.size());
  for (const auto& f : u) out.emplace_back(f.grid());
  return out;
}

}  // namespace

void relaxed_step_1d(Components& u, const FluxFunction& flux, const SourceFunction& source,
                     const WaveSpeeds& speeds, double dt, Limiter lim) {
  if (u.empty() || u.front().grid().dims() != 1)
    throw std::invalid_argument("relaxed_step_1d needs a 1D grid");
  const int order[1] = {0};
  split_transport(u, flux, source, speeds, dt, lim, order);
}

void relaxed_heun_step_1d(Components& u, const FluxFunction& flux, const SourceFunction& source,
                          const WaveSpeeds& speeds, double dt, Limiter lim) {
  if (u.empty() || u.front().grid().dims() != 1)
    throw std::invalid_argument("relaxed_heun_step_1d needs a 1D grid");
  const int order[1] = {0};
  const Components u0 = u;
  split_transport(u, flux, source, speeds, dt, lim, order, FluxForm::semi_discrete);
  split_transport(u, flux, source, speeds, dt, lim, order, FluxForm::semi_discrete);
  for (std::size_t m = 0; m < u.size(); ++m) {
    auto& x = u[m].values();
    const auto& x0 = u0[m].values();
    for (std::size_t q = 0; q < x.size(); ++q) x[q] = 0.5 * (x0[q] + x[q]);
  }
}

std::vector<int> axis_order(int dims, long step, bool alternate) {
  std::vector<int> order(dims);
  for (int a = 0; a < dims; ++a) order[a] = a;
  if (alternate && (step % 2 != 0)) std::reverse(order.begin(), order.end());
  return order;
}

void split_transport(Components& u, const FluxFunction& flux, const SourceFunction& source,
                     const WaveSpeeds& speeds, double dt, Limiter lim,
                     std::span<const int> order, FluxForm form) {
  const Grid& grid = u.front().grid();
  check_cfl(grid, speeds, dt);
  for (auto& f : u) fill_halo(f);
  Components g;
  if (source) {
    g = like(u);
    source(u, g);
  }
  Components w = like(u);
  ScalarField scratch(grid);
  bool first = true;
  for (int axis : order) {
    if (!first)
      for (auto& f : u) fill_halo(f);
    first = false;
    flux(u, axis, w);
    transport_sweep(u, w, axis, speeds.a[axis], dt, lim, scratch, form);
  }
  if (source) add_source(u, g, dt);
}

double total_variation(const ScalarField& f) {
  const Grid& g = f.grid();
  double tv = 0.0;
  const int n = g.cells(0);
  for (int i = 0; i < n; ++i) tv += std::abs(f((i + 1) % n) - f(i));
  return tv;
}

}  // namespace vasnet
