#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "vasnet/state.hpp"

namespace vasnet {

struct DiagnosticRow {
  double t = 0.0;
  double mass = 0.0;
  double kinetic_energy = 0.0;
  double moment_of_inertia = 0.0;
  double max_n = 0.0;
  double dt = 0.0;
  double clipped_mass = 0.0;  // cumulative
};

// 1/2 integral of p . v with the regularised velocity.
double kinetic_energy(const SimState& s);

// Mass centroid on the periodic box: circular mean per axis.
std::array<double, 3> mass_centroid(const ScalarField& n);

// integral of n |x - x_cm|^2 with minimum-image displacements.
double moment_of_inertia(const ScalarField& n);

DiagnosticRow measure(const SimState& s, double dt = 0.0, double clipped = 0.0);

// Header: t,mass,kinetic_energy,moment_of_inertia,max_n,dt,clipped_mass
void write_diagnostics_csv(std::ostream& out, const std::vector<DiagnosticRow>& rows);

// Interior indices of strict local maxima (periodic, 1D) above floor.
std::vector<int> local_maxima_1d(const ScalarField& n, double floor = 0.0);

}  // namespace vasnet
