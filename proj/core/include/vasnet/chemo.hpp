#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "vasnet/grid.hpp"
#include "vasnet/model.hpp"

namespace vasnet {

// explicit_euler: c += dt (D lap c + alpha n - c/tau).
// exact_decay: c <- exp(-dt/tau) c + dt (D lap c + alpha n); the decay is
// integrated exactly so large tau costs nothing.
enum class DiffusionScheme { explicit_euler, exact_decay };

DiffusionScheme parse_diffusion_scheme(const std::string& name);
std::string to_string(DiffusionScheme s);

// Largest stable explicit step: D dt sum_axis 1/h^2 <= 1/2.
double diffusion_stability_limit(const Grid& grid, double D);

// Diffusion and decay together: the Nyquist mode factor 1 - dt/tau - 4 D dt sum 1/h^2
// stays >= -1 for dt <= 2 / (1/tau + 4 D sum 1/h^2). Also bounds the exact-decay form.
double reaction_diffusion_limit(const Grid& grid, const ModelParams& p);

// min of the two limits above
double chemo_step_limit(const Grid& grid, const ModelParams& p);

// Second-order (3/5/7-point) Laplacian of a field with filled halos.
void laplacian(const ScalarField& c, ScalarField& out);

// Advances c by dt with emission alpha(c) n and decay c/tau. Halos of c must
// be filled. Throws StabilityViolation when dt exceeds chemo_step_limit.
ScalarField diffuse_react_step(const ScalarField& c, const ScalarField& n, const ModelParams& p,
                               double dt, DiffusionScheme scheme = DiffusionScheme::exact_decay);

// Same update without checks, written into out's interior.
void diffuse_react_into(const ScalarField& c, const ScalarField& n, const ModelParams& p,
                        double dt, DiffusionScheme scheme, ScalarField& out);

// sqrt(D tau): range of the chemically mediated interaction.
double predicted_scale(const ModelParams& p);

struct ModeRatio {
  std::array<int, 3> mode{0, 0, 0};  // signed wave numbers per axis
  double k = 0.0;                    // |k| in 1/mm
  double measured = 0.0;             // |c_k / n_k|
  double theory = 0.0;               // alpha tau / (D tau k^2 + 1)
};

struct SpectrumOptions {
  double dt_fraction = 0.9;   // of the explicit diffusion limit
  long max_steps = 2'000'000;
  double tolerance = 1e-10;   // relative change of c over one tau
  double min_amplitude = 1e-9;  // skip modes with |n_k| below this fraction of the largest
};

// Integrates c to steady state against a frozen n (constant alpha) and
// compares each discrete Fourier mode with the fast-diffusion response.
// Throws NoConvergence if max_steps is exhausted.
std::vector<ModeRatio> steady_response_spectrum(const ScalarField& n, const ModelParams& p,
                                                const SpectrumOptions& opts = {});

// CSV columns: mx,my,mz,k,measured,theory
void write_spectrum_csv(std::ostream& out, const std::vector<ModeRatio>& rows);

}  // namespace vasnet
