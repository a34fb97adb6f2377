#include "vasnet/scaling_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <set>

#include "vasnet/errors.hpp"

namespace vasnet {

double Logistic::operator()(double x) const {
  return floor + (ceiling - floor) / (1.0 + std::exp(-(x - center) / width));
}

namespace {

double rss_of(const Logistic& f, const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - f(x[i]);
    s += r * r;
  }
  return s;
}

}  // namespace

Logistic fit_logistic(const std::vector<double>& x, const std::vector<double>& y, double* rss) {
  if (x.size() != y.size() || x.size() < 2) throw DegenerateData("logistic fit needs >= 2 points");
  const auto [xmin_it, xmax_it] = std::minmax_element(x.begin(), x.end());
  const double span = std::max(*xmax_it - *xmin_it, 1e-300);

  // Start: centre at the mean of x weighted towards Pi = 1/2, width a tenth of the span.
  Logistic f;
  {
    double wsum = 0.0, xs = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double w = y[i] * (1.0 - y[i]) + 1e-3;
      wsum += w;
      xs += w * x[i];
    }
    f.center = xs / wsum;
    f.width = 0.1 * span;
  }
  // Parameterise width through its log to keep it positive.
  double c = f.center, lw = std::log(f.width);
  double best = rss_of(f, x, y);
  double damping = 1e-3;
  for (int it = 0; it < 200; ++it) {
    const double w = std::exp(lw);
    double jtj00 = 0.0, jtj01 = 0.0, jtj11 = 0.0, g0 = 0.0, g1 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double z = (x[i] - c) / w;
      const double s = 1.0 / (1.0 + std::exp(-z));
      const double ds = s * (1.0 - s);
      const double r = y[i] - s;
      const double jc = -ds / w;  // d s / d c
      const double jl = -ds * z;  // d s / d log w
      jtj00 += jc * jc;
      jtj01 += jc * jl;
      jtj11 += jl * jl;
      g0 += jc * r;
      g1 += jl * r;
    }
    bool improved = false;
    for (int tries = 0; tries < 30; ++tries) {
      const double a00 = jtj00 * (1.0 + damping) + 1e-300;
      const double a11 = jtj11 * (1.0 + damping) + 1e-300;
      const double det = a00 * a11 - jtj01 * jtj01;
      if (!(det > 0.0)) {
        damping *= 10.0;
        continue;
      }
      const double dc = (a11 * g0 - jtj01 * g1) / det;
      const double dl = (a00 * g1 - jtj01 * g0) / det;
      Logistic trial{c + dc, std::exp(std::clamp(lw + dl, lw - 2.0, lw + 2.0)), 0.0, 1.0};
      const double t = rss_of(trial, x, y);
      if (t <= best) {
        const double gain = best - t;
        c = trial.center;
        lw = std::log(trial.width);
        best = t;
        damping = std::max(damping * 0.3, 1e-12);
        improved = gain > 1e-15 * std::max(best, 1e-300) && gain > 0.0;
        break;
      }
      damping *= 10.0;
    }
    if (!improved) break;
  }
  f.center = c;
  f.width = std::exp(lw);
  if (rss) *rss = best;
  return f;
}

double rescaled_density(double n_bar, double L, double n_c, double nu) {
  return (n_bar - n_c) * std::pow(L, 1.0 / nu);
}

double collapse_residual(const std::vector<PiPoint>& table, double n_c, double nu, Logistic* best) {
  std::vector<double> x, y;
  x.reserve(table.size());
  y.reserve(table.size());
  for (const auto& p : table) {
    x.push_back(rescaled_density(p.n_bar, p.L, n_c, nu));
    y.push_back(p.pi);
  }
  double rss = 0.0;
  const Logistic f = fit_logistic(x, y, &rss);
  if (best) *best = f;
  return rss;
}

namespace {

struct Objective {
  const std::vector<PiPoint>& table;
  double operator()(double n_c, double log_nu) const {
    return collapse_residual(table, n_c, std::exp(log_nu));
  }
};

// Golden-section minimum of f on [a, b].
template <class F>
double golden(F&& f, double a, double b, double tol) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (std::abs(b - a) > tol * (1.0 + std::abs(a) + std::abs(b))) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? c : d;
}

}  // namespace

ScalingFit fit_scaling(const std::vector<PiPoint>& table, const FitOptions& opts) {
  std::map<double, std::set<double>> by_length;
  for (const auto& p : table) by_length[p.L].insert(p.n_bar);
  if (by_length.size() < 2) throw DegenerateData("need at least two box sizes");
  for (const auto& [L, d] : by_length)
    if (d.size() < 4) throw DegenerateData("need at least four densities per box size");
  const bool flat = std::all_of(table.begin(), table.end(),
                                [&](const PiPoint& p) { return p.pi == table.front().pi; });
  if (flat) throw DegenerateData("all percolation probabilities are equal");
  if (!(opts.nu_min > 0.0 && opts.nu_max > opts.nu_min) || opts.grid_points < 3)
    throw ConfigError("bad scaling fit options");

  double nmin = std::numeric_limits<double>::infinity(), nmax = -nmin;
  for (const auto& p : table) {
    nmin = std::min(nmin, p.n_bar);
    nmax = std::max(nmax, p.n_bar);
  }
  const double lmin = std::log(opts.nu_min), lmax = std::log(opts.nu_max);
  const Objective obj{table};

  // Level 1 grid, then a finer grid around the best node.
  double bn = nmin, bl = lmin, bf = std::numeric_limits<double>::infinity();
  double lo_n = nmin, hi_n = nmax, lo_l = lmin, hi_l = lmax;
  for (int level = 0; level < 2; ++level) {
    const int G = opts.grid_points;
    const double sn = (hi_n - lo_n) / (G - 1), sl = (hi_l - lo_l) / (G - 1);
    for (int a = 0; a < G; ++a)
      for (int b = 0; b < G; ++b) {
        const double n = lo_n + a * sn, l = lo_l + b * sl;
        const double f = obj(n, l);
        if (f < bf) {
          bf = f;
          bn = n;
          bl = l;
        }
      }
    lo_n = std::max(nmin, bn - sn);
    hi_n = std::min(nmax, bn + sn);
    lo_l = std::max(lmin, bl - sl);
    hi_l = std::min(lmax, bl + sl);
  }

  // Coordinate descent within the last bracket, widened if the optimum sits on its edge.
  double wn = hi_n - lo_n, wl = hi_l - lo_l;
  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    const double n0 = bn, l0 = bl;
    bn = golden([&](double n) { return obj(n, bl); }, std::max(nmin, bn - wn),
                std::min(nmax, bn + wn), opts.tolerance);
    bl = golden([&](double l) { return obj(bn, l); }, std::max(lmin, bl - wl),
                std::min(lmax, bl + wl), opts.tolerance);
    const double f = obj(bn, bl);
    const double moved_n = std::abs(bn - n0), moved_l = std::abs(bl - l0);
    wn = std::max(4.0 * moved_n, 1e-6 * (nmax - nmin));
    wl = std::max(4.0 * moved_l, 1e-6 * (lmax - lmin));
    const bool done = std::abs(bf - f) <= opts.tolerance * std::max(bf, 1e-300) &&
                      moved_n <= 1e-9 * (nmax - nmin) && moved_l <= 1e-9;
    bf = std::min(bf, f);
    if (done) break;
  }

  ScalingFit fit;
  fit.n_c = bn;
  fit.nu = std::exp(bl);
  fit.residual = collapse_residual(table, fit.n_c, fit.nu, &fit.logistic);
  fit.nu_at_bound = bl >= lmax - 1e-6 * (lmax - lmin);
  return fit;
}

void write_collapse_csv(std::ostream& out, const std::vector<PiPoint>& table,
                        const ScalingFit& fit) {
  out << "L,n_bar,x,pi,pi_fit\n";
  const auto old = out.precision(17);
  for (const auto& p : table) {
    const double x = rescaled_density(p.n_bar, p.L, fit.n_c, fit.nu);
    out << p.L << ',' << p.n_bar << ',' << x << ',' << p.pi << ',' << fit.logistic(x) << '\n';
  }
  out.precision(old);
}

void write_fit_summary(std::ostream& out, const ScalingFit& fit) {
  const auto old = out.precision(17);
  out << "n_c = " << fit.n_c << '\n'
      << "nu = " << fit.nu << '\n'
      << "center = " << fit.logistic.center << '\n'
      << "width = " << fit.logistic.width << '\n'
      << "floor = " << fit.logistic.floor << '\n'
      << "ceiling = " << fit.logistic.ceiling << '\n'
      << "residual = " << fit.residual << '\n'
      << "nu_at_bound = " << (fit.nu_at_bound ? "true" : "false") << '\n';
  out.precision(old);
}

}  // namespace vasnet
