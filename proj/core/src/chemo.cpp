#include "vasnet/chemo.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <ostream>
#include <sstream>

#include "vasnet/errors.hpp"

namespace vasnet {

DiffusionScheme parse_diffusion_scheme(const std::string& name) {
  if (name == "explicit") return DiffusionScheme::explicit_euler;
  if (name == "exact_decay" || name == "exact-decay") return DiffusionScheme::exact_decay;
  throw ConfigError("unknown diffusion scheme '" + name + "'");
}

std::string to_string(DiffusionScheme s) {
  return s == DiffusionScheme::explicit_euler ? "explicit" : "exact_decay";
}

double diffusion_stability_limit(const Grid& grid, double D) {
  double inv = 0.0;
  for (int a = 0; a < grid.dims(); ++a) inv += 1.0 / (grid.spacing(a) * grid.spacing(a));
  return 1.0 / (2.0 * D * inv);
}

double reaction_diffusion_limit(const Grid& grid, const ModelParams& p) {
  double inv = 0.0;
  for (int a = 0; a < grid.dims(); ++a) inv += 1.0 / (grid.spacing(a) * grid.spacing(a));
  return 2.0 / (1.0 / p.tau + 4.0 * p.D * inv);
}

double chemo_step_limit(const Grid& grid, const ModelParams& p) {
  return std::min(diffusion_stability_limit(grid, p.D), reaction_diffusion_limit(grid, p));
}

void laplacian(const ScalarField& c, ScalarField& out) {
  const Grid& g = c.grid();
  const double* v = c.data();
  double* o = out.data();
  std::array<double, 3> w{};
  for (int a = 0; a < g.dims(); ++a) w[a] = 1.0 / (g.spacing(a) * g.spacing(a));
  for (int k = 0; k < g.cells(2); ++k)
    for (int j = 0; j < g.cells(1); ++j) {
      const std::size_t row = g.index(0, j, k);
      for (int i = 0; i < g.cells(0); ++i) {
        const std::size_t m = row + i;
        double s = 0.0;
        for (int a = 0; a < g.dims(); ++a) {
          const std::ptrdiff_t st = g.stride(a);
          s += w[a] * (v[m + st] - 2.0 * v[m] + v[m - st]);
        }
        o[m] = s;
      }
    }
}

void diffuse_react_into(const ScalarField& c, const ScalarField& n, const ModelParams& p,
                        double dt, DiffusionScheme scheme, ScalarField& out) {
  const Grid& g = c.grid();
  laplacian(c, out);
  const double decay =
      scheme == DiffusionScheme::exact_decay ? std::exp(-dt / p.tau) : 1.0 - dt / p.tau;
  const bool sat = p.saturation_enabled;
  const double c0 = sat ? p.c0.value_or(0.0) : 0.0;
  if (sat && !p.c0) throw ConfigError("saturation threshold c0 not resolved");
  const double* cv = c.data();
  const double* nv = n.data();
  double* o = out.data();
  for (int k = 0; k < g.cells(2); ++k)
    for (int j = 0; j < g.cells(1); ++j) {
      const std::size_t row = g.index(0, j, k);
      for (int i = 0; i < g.cells(0); ++i) {
        const std::size_t m = row + i;
        const double alpha = sat ? p.alpha0 * (1.0 - std::tanh(cv[m] - c0)) : p.alpha0;
        o[m] = decay * cv[m] + dt * (p.D * o[m] + alpha * nv[m]);
      }
    }
}

ScalarField diffuse_react_step(const ScalarField& c, const ScalarField& n, const ModelParams& p,
                               double dt, DiffusionScheme scheme) {
  const double limit = chemo_step_limit(c.grid(), p);
  if (dt > limit * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "dt = " << dt << " exceeds explicit reaction-diffusion limit " << limit;
    throw StabilityViolation(msg.str());
  }
  if (scheme == DiffusionScheme::explicit_euler && dt > p.tau)
    throw StabilityViolation("explicit decay needs dt <= tau");
  ScalarField out(c.grid());
  diffuse_react_into(c, n, p, dt, scheme, out);
  return out;
}

double predicted_scale(const ModelParams& p) { return std::sqrt(std::max(0.0, p.D * p.tau)); }

namespace {

struct FftwFree {
  void operator()(void* ptr) const { fftw_free(ptr); }
};

// Forward r2c transform of the interior; output has dims (Nz, Ny, Nx/2+1).
std::vector<std::complex<double>> forward(const ScalarField& f) {
  const Grid& g = f.grid();
  const int d = g.dims();
  int shape[3];
  for (int a = 0; a < d; ++a) shape[a] = g.cells(d - 1 - a);  // slowest first
  const std::size_t count = g.interior_count();
  const std::size_t half = count / g.cells(0) * (g.cells(0) / 2 + 1);
  std::unique_ptr<double, FftwFree> in(static_cast<double*>(fftw_malloc(sizeof(double) * count)));
  std::unique_ptr<fftw_complex, FftwFree> out(
      static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * half)));
  fftw_plan plan = fftw_plan_dft_r2c(d, shape, in.get(), out.get(), FFTW_ESTIMATE);
  const auto values = f.interior();
  std::copy(values.begin(), values.end(), in.get());
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  std::vector<std::complex<double>> result(half);
  for (std::size_t m = 0; m < half; ++m) result[m] = {out.get()[m][0], out.get()[m][1]};
  return result;
}

}  // namespace

std::vector<ModeRatio> steady_response_spectrum(const ScalarField& n, const ModelParams& p,
                                                const SpectrumOptions& opts) {
  if (p.saturation_enabled)
    throw ConfigError("steady_response_spectrum needs constant alpha (saturation disabled)");
  const Grid& g = n.grid();
  const double dt = opts.dt_fraction * chemo_step_limit(g, p);
  // The explicit scheme has the exact continuous decay balance at steady state.
  const long per_tau = std::max<long>(1, static_cast<long>(std::ceil(p.tau / dt)));

  ScalarField c(g), next(g);
  ScalarField frozen = n;
  fill_halo(frozen);
  std::vector<double> reference = c.interior();
  bool converged = false;
  for (long step = 1; step <= opts.max_steps; ++step) {
    fill_halo(c);
    diffuse_react_into(c, frozen, p, dt, DiffusionScheme::explicit_euler, next);
    std::swap(c, next);
    if (step % per_tau == 0) {
      const auto now = c.interior();
      double diff = 0.0, scale = 0.0;
      for (std::size_t m = 0; m < now.size(); ++m) {
        if (!std::isfinite(now[m])) throw NonFiniteState("chemoattractant diverged in spectrum run");
        diff = std::max(diff, std::abs(now[m] - reference[m]));
        scale = std::max(scale, std::abs(now[m]));
      }
      reference = now;
      if (scale > 0.0 && diff <= opts.tolerance * scale) {
        converged = true;
        break;
      }
      if (scale == 0.0) {
        converged = true;
        break;
      }
    }
  }
  if (!converged) throw NoConvergence("steady state not reached within max_steps");

  const auto nk = forward(frozen);
  const auto ck = forward(c);
  double largest = 0.0;
  for (const auto& z : nk) largest = std::max(largest, std::abs(z));

  std::vector<ModeRatio> rows;
  const int nx = g.cells(0), ny = g.cells(1), nz = g.cells(2);
  const int hx = nx / 2 + 1;
  auto signed_mode = [](int m, int size) { return m <= size / 2 ? m : m - size; };
  for (int kz = 0; kz < nz; ++kz)
    for (int ky = 0; ky < ny; ++ky)
      for (int kx = 0; kx < hx; ++kx) {
        const std::size_t m = static_cast<std::size_t>(kx) + hx * (ky + static_cast<std::size_t>(ny) * kz);
        const double amp = std::abs(nk[m]);
        if (amp <= opts.min_amplitude * largest || amp == 0.0) continue;
        ModeRatio r;
        r.mode = {kx, g.dims() > 1 ? signed_mode(ky, ny) : 0, g.dims() > 2 ? signed_mode(kz, nz) : 0};
        double k2 = 0.0;
        for (int a = 0; a < g.dims(); ++a) {
          const double ka = 2.0 * std::numbers::pi * r.mode[a] / g.length(a);
          k2 += ka * ka;
        }
        r.k = std::sqrt(k2);
        r.measured = std::abs(ck[m] / nk[m]);
        r.theory = p.alpha0 * p.tau / (p.D * p.tau * k2 + 1.0);
        rows.push_back(r);
      }
  return rows;
}

void write_spectrum_csv(std::ostream& out, const std::vector<ModeRatio>& rows) {
  out << "mx,my,mz,k,measured,theory\n";
  out.precision(17);
  for (const auto& r : rows)
    out << r.mode[0] << ',' << r.mode[1] << ',' << r.mode[2] << ',' << r.k << ',' << r.measured
        << ',' << r.theory << '\n';
}

}  // namespace vasnet
