#pragma once

#include <iosfwd>
#include <vector>

#include "vasnet/percolation.hpp"

namespace vasnet {

// floor + (ceiling - floor) / (1 + exp(-(x - center) / width))
struct Logistic {
  double center = 0.0;
  double width = 1.0;
  double floor = 0.0;
  double ceiling = 1.0;

  double operator()(double x) const;
};

// Least-squares logistic in (center, width) with floor 0 and ceiling 1,
// by damped Gauss-Newton. Returns the residual sum of squares via rss.
Logistic fit_logistic(const std::vector<double>& x, const std::vector<double>& y,
                      double* rss = nullptr);

// x = (n_bar - n_c) L^(1/nu)
double rescaled_density(double n_bar, double L, double n_c, double nu);

// Squared distance of the rescaled table from its best logistic.
double collapse_residual(const std::vector<PiPoint>& table, double n_c, double nu,
                         Logistic* best = nullptr);

struct FitOptions {
  double nu_min = 0.3;
  double nu_max = 3.0;
  int grid_points = 25;  // per axis, each of the two grid levels
  int max_sweeps = 60;   // coordinate-descent passes
  double tolerance = 1e-10;
};

struct ScalingFit {
  double n_c = 0.0;
  double nu = 0.0;
  Logistic logistic;
  double residual = 0.0;
  bool nu_at_bound = false;  // residual still falling at the nu bound: no collapse
};

// Minimises collapse_residual over n_c in [min n_bar, max n_bar] and nu in
// [nu_min, nu_max]: two grid levels, then coordinate descent with golden
// section. Needs >= 2 lengths with >= 4 densities each; throws
// DegenerateData otherwise or when every Pi is equal.
ScalingFit fit_scaling(const std::vector<PiPoint>& table, const FitOptions& opts = {});

// CSV: L,n_bar,x,pi,pi_fit
void write_collapse_csv(std::ostream& out, const std::vector<PiPoint>& table,
                        const ScalingFit& fit);
// key = value lines.
void write_fit_summary(std::ostream& out, const ScalingFit& fit);

}  // namespace vasnet
