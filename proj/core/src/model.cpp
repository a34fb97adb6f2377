#include "vasnet/model.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "vasnet/errors.hpp"
#include "vasnet/state.hpp"

namespace vasnet {

ModelParams ModelParams::tissue_preset() { return ModelParams{}; }

ModelParams ModelParams::growth_factor_preset() {
  ModelParams p;
  p.D = 1e-5;
  p.tau = 3840.0;
  return p;
}

void ModelParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw ConfigError(what);
  };
  require(D > 0.0 && std::isfinite(D), "D must be positive");
  require(tau > 0.0 && std::isfinite(tau), "tau must be positive");
  require(sigma > 0.0, "sigma must be positive");
  require(Cp >= 1.0, "Cp must be >= 1");
  require(Bp >= 0.0, "Bp must be >= 0");
  require(n0_pack > 0.0, "n0_pack must be positive");
  require(mu0 >= 0.0 && alpha0 >= 0.0 && beta0 >= 0.0, "mu0, alpha0, beta0 must be >= 0");
  require(!packing_volume || *packing_volume > 0.0, "packing_volume must be positive");
}

double ModelParams::r0() const { return std::sqrt(D * tau); }

double ModelParams::packing_scale(int dims) const {
  if (packing_volume) return *packing_volume;
  switch (dims) {
    case 1: return 2.0 * sigma;
    case 2: return std::numbers::pi * sigma * sigma;
    default: return 4.0 / 3.0 * std::numbers::pi * sigma * sigma * sigma;
  }
}

double ModelParams::saturation_threshold(int dims) const {
  return c0 ? *c0 : calibrated_c0(*this, dims);
}

ModelParams ModelParams::resolved(int dims) const {
  validate();
  ModelParams out = *this;
  out.packing_volume = packing_scale(dims);
  out.c0 = saturation_threshold(dims);
  return out;
}

double ModelParams::vacuum_density(int dims) const {
  return 1e-9 * n0_pack / packing_scale(dims);
}

namespace {
double threshold(const ModelParams& p) {
  if (!p.c0) throw ConfigError("saturation threshold c0 not resolved; call ModelParams::resolved()");
  return *p.c0;
}
}  // namespace

double pressure_phi(double packing, const ModelParams& p) {
  if (packing <= p.n0_pack) return 0.0;
  return p.Bp * std::pow(packing - p.n0_pack, p.Cp);
}

double pressure_slope(double packing, const ModelParams& p) {
  if (packing <= p.n0_pack) return 0.0;
  return p.Bp * p.Cp * std::pow(packing - p.n0_pack, p.Cp - 1.0);
}

double saturation_mu(double c, const ModelParams& p) {
  if (!p.saturation_enabled) return p.mu0;
  return p.mu0 * (1.0 - std::tanh(c - threshold(p)));
}

double saturation_alpha(double c, const ModelParams& p) {
  if (!p.saturation_enabled) return p.alpha0;
  return p.alpha0 * (1.0 - std::tanh(c - threshold(p)));
}

double saturation_beta(double c, const ModelParams& p) {
  if (!p.saturation_enabled) return p.beta0;
  return p.beta0 * (1.0 + std::tanh(c - threshold(p)));
}

double isolated_cell_peak(const ModelParams& p, int dims, double alpha) {
  using boost::math::quadrature::gauss_kronrod;
  const double s = p.sigma;
  const double r0 = p.r0();
  const double inf = std::numeric_limits<double>::infinity();
  double value = 0.0;
  if (dims == 1) {
    // Green's function r0/(2D) exp(-|x|/r0), even integrand.
    auto f = [&](double x) {
      return (r0 / (2.0 * p.D)) * std::exp(-x / r0) * std::exp(-x * x / (2 * s * s)) /
             (std::sqrt(2.0 * std::numbers::pi) * s);
    };
    value = 2.0 * gauss_kronrod<double, 61>::integrate(f, 0.0, inf, 10, 1e-12);
  } else if (dims == 2) {
    auto f = [&](double r) {
      if (r <= 0.0) return 0.0;
      return r * std::cyl_bessel_k(0.0, r / r0) / (2.0 * std::numbers::pi * p.D) *
             std::exp(-r * r / (2 * s * s)) / (s * s);
    };
    value = gauss_kronrod<double, 61>::integrate(f, 0.0, inf, 10, 1e-12);
  } else {
    auto f = [&](double r) {
      return r * std::exp(-r / r0) / p.D * std::exp(-r * r / (2 * s * s)) /
             (std::pow(2.0 * std::numbers::pi, 1.5) * s * s * s);
    };
    value = gauss_kronrod<double, 61>::integrate(f, 0.0, inf, 10, 1e-12);
  }
  return alpha * value;
}

double calibrated_c0(const ModelParams& p, int dims) {
  // Below threshold the saturating emission runs at about 2 alpha0.
  const double alpha = p.saturation_enabled ? 2.0 * p.alpha0 : p.alpha0;
  return 2.0 * isolated_cell_peak(p, dims, alpha);
}

VectorField gradient(const ScalarField& f) {
  const Grid& g = f.grid();
  VectorField out(g);
  const double* v = f.data();
  for (int a = 0; a < g.dims(); ++a) {
    const std::ptrdiff_t s = g.stride(a);
    const double inv = 1.0 / (2.0 * g.spacing(a));
    double* o = out[a].data();
    for_each_cell(g, [&](int i, int j, int k) {
      const std::size_t c = g.index(i, j, k);
      o[c] = (v[c + s] - v[c - s]) * inv;
    });
  }
  return out;
}

VectorField grad_phi(const ScalarField& n, const ModelParams& p) {
  const Grid& g = n.grid();
  const double scale = p.packing_scale(g.dims());
  ScalarField phi(g);
  for (std::size_t c = 0; c < g.padded_count(); ++c)
    phi.values()[c] = pressure_phi(n.values()[c] * scale, p);
  return gradient(phi);
}

SourceEval momentum_source(const SimState& state, const VectorField& grad_c,
                           const VectorField& grad_phi) {
  const Grid& g = state.grid;
  const ModelParams& prm = state.params;
  SourceEval out{VectorField(g), ScalarField(g)};
  for_each_cell(g, [&](int i, int j, int k) {
    const double n = state.n(i, j, k);
    const double c = state.c(i, j, k);
    const double mu = saturation_mu(c, prm);
    const double beta = saturation_beta(c, prm);
    for (int a = 0; a < g.dims(); ++a)
      out.momentum[a](i, j, k) =
          n * mu * grad_c[a](i, j, k) - n * grad_phi[a](i, j, k) - beta * state.p[a](i, j, k);
    out.chem(i, j, k) = saturation_alpha(c, prm) * n - c / prm.tau;
  });
  return out;
}

}  // namespace vasnet
