#include "vasnet/diagnostics.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

namespace vasnet {

namespace {

struct Neumaier {
  double sum = 0.0, comp = 0.0;
  void add(double v) {
    const double t = sum + v;
    comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace

double kinetic_energy(const SimState& s) {
  const Grid& g = s.grid;
  const double eps = s.params.vacuum_density(g.dims());
  Neumaier acc;
  for_each_cell(g, [&](int i, int j, int k) {
    const double n = s.n(i, j, k);
    for (int a = 0; a < g.dims(); ++a) {
      const double p = s.p[a](i, j, k);
      acc.add(p * recover_velocity(n, p, eps));
    }
  });
  return 0.5 * acc.value() * g.cell_volume();
}

std::array<double, 3> mass_centroid(const ScalarField& n) {
  const Grid& g = n.grid();
  std::array<double, 3> out{0.0, 0.0, 0.0};
  for (int a = 0; a < g.dims(); ++a) {
    Neumaier cs, sn;
    const double w = 2.0 * std::numbers::pi / g.length(a);
    for_each_cell(g, [&](int i, int j, int k) {
      const int idx[3] = {i, j, k};
      const double th = w * g.center(a, idx[a]);
      cs.add(n(i, j, k) * std::cos(th));
      sn.add(n(i, j, k) * std::sin(th));
    });
    double x = std::atan2(sn.value(), cs.value()) / w;
    if (x < 0.0) x += g.length(a);
    out[a] = x;
  }
  return out;
}

double moment_of_inertia(const ScalarField& n) {
  const Grid& g = n.grid();
  const auto xc = mass_centroid(n);
  Neumaier acc;
  for_each_cell(g, [&](int i, int j, int k) {
    const int idx[3] = {i, j, k};
    double r2 = 0.0;
    for (int a = 0; a < g.dims(); ++a) {
      const double L = g.length(a);
      double dx = g.center(a, idx[a]) - xc[a];
      dx -= L * std::round(dx / L);
      r2 += dx * dx;
    }
    acc.add(n(i, j, k) * r2);
  });
  return acc.value() * g.cell_volume();
}

DiagnosticRow measure(const SimState& s, double dt, double clipped) {
  DiagnosticRow r;
  r.t = s.time;
  r.mass = integrate(s.n);
  r.kinetic_energy = kinetic_energy(s);
  r.moment_of_inertia = moment_of_inertia(s.n);
  r.max_n = max_value(s.n);
  r.dt = dt;
  r.clipped_mass = clipped;
  return r;
}

void write_diagnostics_csv(std::ostream& out, const std::vector<DiagnosticRow>& rows) {
  out << "t,mass,kinetic_energy,moment_of_inertia,max_n,dt,clipped_mass\n";
  const auto old = out.precision(17);
  for (const auto& r : rows)
    out << r.t << ',' << r.mass << ',' << r.kinetic_energy << ',' << r.moment_of_inertia << ','
        << r.max_n << ',' << r.dt << ',' << r.clipped_mass << '\n';
  out.precision(old);
}

std::vector<int> local_maxima_1d(const ScalarField& n, double floor) {
  const int N = n.grid().cells(0);
  std::vector<int> out;
  for (int i = 0; i < N; ++i) {
    const double v = n(i);
    const double l = n((i + N - 1) % N);
    const double r = n((i + 1) % N);
    if (v > floor && v > l && v >= r) out.push_back(i);
  }
  return out;
}

}  // namespace vasnet
