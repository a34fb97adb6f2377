#pragma once

#include <optional>

#include "vasnet/grid.hpp"

namespace vasnet {

// Coefficients of the cell-density / momentum / chemoattractant system.
//
// Densities n are stored as cells per unit d-volume, so a single cell
// integrates to 1. The pressure closure and the occupancy threshold act on
// the dimensionless packing density n * packing_volume; packing_volume
// defaults to the d-ball of radius sigma.
struct ModelParams {
  double D = 1e-3;        // mm^2/s
  double tau = 4000.0;    // s
  double mu0 = 1e-11;     // chemotactic sensitivity
  double alpha0 = 1.0;    // 1/s
  double beta0 = 1e-3;    // 1/s
  std::optional<double> c0;  // saturation threshold; calibrated when unset
  double n0_pack = 1.0;   // close-packing (packing density units)
  double Bp = 1e-3;       // mm^2/s^2
  double Cp = 3.0;
  double sigma = 0.015;   // mm
  bool saturation_enabled = true;
  std::optional<double> packing_volume;  // mm^d

  // Tissue-scale coefficients: D = 1e-3 mm^2/s, tau = 4000 s.
  static ModelParams tissue_preset();
  // Growth-factor coefficients: D = 1e-7 cm^2/s, tau = 64 min.
  static ModelParams growth_factor_preset();

  // Throws ConfigError when an invariant is broken.
  void validate() const;

  // Copy with c0 and packing_volume filled in for a d-dimensional run.
  ModelParams resolved(int dims) const;

  double r0() const;
  double packing_scale(int dims) const;
  double saturation_threshold(int dims) const;
  // Density below which the velocity recovery is regularised (cells/mm^d).
  double vacuum_density(int dims) const;
};

// Phenomenological pressure, zero up to close packing.
double pressure_phi(double packing, const ModelParams& p);
// d phi / d(packing).
double pressure_slope(double packing, const ModelParams& p);

double saturation_mu(double c, const ModelParams& p);
double saturation_alpha(double c, const ModelParams& p);
double saturation_beta(double c, const ModelParams& p);

// Steady concentration at the centre of one isolated Gaussian cell in free
// space, emission rate alpha, no saturation.
double isolated_cell_peak(const ModelParams& p, int dims, double alpha);

// Threshold that puts the isolated-cell peak at half of c0.
double calibrated_c0(const ModelParams& p, int dims);

// v = p n / (n^2 + eps^2).
inline double recover_velocity(double n, double mom, double eps) {
  return mom * n / (n * n + eps * eps);
}

// Centred second-order gradient of a field with filled halos.
VectorField gradient(const ScalarField& f);

// Centred gradient of phi(n * packing_scale); halos of n must be filled.
VectorField grad_phi(const ScalarField& n, const ModelParams& p);

}  // namespace vasnet
