#include "vasnet/seeding.hpp"

#include <cmath>
#include <sstream>

#include "vasnet/errors.hpp"

namespace vasnet {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t run, std::uint64_t index,
                           std::uint64_t lane) {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ run);
  h = splitmix64(h ^ index);
  return splitmix64(h ^ lane);
}

double counter_uniform(std::uint64_t seed, std::uint64_t run, std::uint64_t index,
                       std::uint64_t lane) {
  return static_cast<double>(counter_hash(seed, run, index, lane) >> 11) * 0x1.0p-53;
}

std::size_t cell_count(const Grid& grid, double n_bar) {
  if (!(n_bar >= 0.0)) throw ConfigError("density must be non-negative");
  return static_cast<std::size_t>(std::llround(n_bar * grid.box_volume()));
}

std::vector<Point> random_positions(const Grid& grid, std::size_t count, std::uint64_t seed,
                                    std::uint64_t run) {
  std::vector<Point> out(count, Point{0.0, 0.0, 0.0});
  for (std::size_t c = 0; c < count; ++c)
    for (int a = 0; a < grid.dims(); ++a)
      out[c][a] = counter_uniform(seed, run, c, a) * grid.length(a);
  return out;
}

namespace {

// Cell averages of a 1D unit Gaussian, accumulated onto periodic cells.
struct AxisWeights {
  std::vector<int> cell;
  std::vector<double> weight;
};

AxisWeights axis_weights(const Grid& g, int axis, double x0, double sigma) {
  AxisWeights w;
  if (axis >= g.dims()) {
    w.cell.push_back(0);
    w.weight.push_back(1.0);
    return w;
  }
  const double h = g.spacing(axis);
  const int n = g.cells(axis);
  const int lo = static_cast<int>(std::floor((x0 - 8.0 * sigma) / h));
  const int hi = static_cast<int>(std::floor((x0 + 8.0 * sigma) / h));
  const double s = 1.0 / (sigma * std::sqrt(2.0));
  auto cdf = [&](double x) { return 0.5 * std::erfc(-(x - x0) * s); };
  std::vector<double> acc(n, 0.0);
  double left = cdf(lo * h);
  for (int i = lo; i <= hi; ++i) {
    const double right = cdf((i + 1) * h);
    const int m = ((i % n) + n) % n;
    acc[m] += (right - left) / h;
    left = right;
  }
  for (int m = 0; m < n; ++m)
    if (acc[m] != 0.0) {
      w.cell.push_back(m);
      w.weight.push_back(acc[m]);
    }
  return w;
}

void check_resolved(const Grid& g, double sigma) {
  for (int a = 0; a < g.dims(); ++a)
    if (sigma < g.spacing(a)) {
      std::ostringstream msg;
      msg << "bump width " << sigma << " mm below grid spacing " << g.spacing(a) << " mm";
      throw UnresolvedBump(msg.str());
    }
}

}  // namespace

void add_bump(ScalarField& n, const Point& x0, double sigma, double weight) {
  const Grid& g = n.grid();
  const AxisWeights wx = axis_weights(g, 0, x0[0], sigma);
  const AxisWeights wy = axis_weights(g, 1, x0[1], sigma);
  const AxisWeights wz = axis_weights(g, 2, x0[2], sigma);
  for (std::size_t c = 0; c < wz.cell.size(); ++c)
    for (std::size_t b = 0; b < wy.cell.size(); ++b) {
      const double wzy = weight * wz.weight[c] * wy.weight[b];
      for (std::size_t a = 0; a < wx.cell.size(); ++a)
        n(wx.cell[a], wy.cell[b], wz.cell[c]) += wzy * wx.weight[a];
    }
}

SimState seed_bumps(const Grid& grid, const ModelParams& params, std::span<const Point> centers) {
  check_resolved(grid, params.sigma);
  SimState s(grid, params);
  for (const Point& x : centers) add_bump(s.n, x, params.sigma);
  s.fill_halos();
  return s;
}

SimState seed_initial_state(const Grid& grid, const ModelParams& params, double n_bar,
                            std::uint64_t seed, std::uint64_t run) {
  check_resolved(grid, params.sigma);
  const auto centers = random_positions(grid, cell_count(grid, n_bar), seed, run);
  return seed_bumps(grid, params, centers);
}

ScalarField random_field(const Grid& grid, double lo, double hi, std::uint64_t seed,
                         std::uint64_t run) {
  ScalarField f(grid);
  std::uint64_t m = 0;
  for_each_cell(grid, [&](int i, int j, int k) {
    f(i, j, k) = lo + (hi - lo) * counter_uniform(seed, run, m++, 0);
  });
  fill_halo(f);
  return f;
}

}  // namespace vasnet
