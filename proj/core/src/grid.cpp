#include "vasnet/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "vasnet/errors.hpp"

namespace vasnet {

Grid::Grid(int dims, std::array<int, 3> cells, std::array<double, 3> length) : dims_(dims) {
  if (dims < 1 || dims > 3) throw ConfigError("grid dimension must be 1, 2 or 3");
  for (int a = 0; a < 3; ++a) {
    if (a < dims) {
      if (cells[a] < 1) throw ConfigError("cell count must be positive on every axis");
      if (!(length[a] > 0.0) || !std::isfinite(length[a]))
        throw ConfigError("box length must be positive on every axis");
      cells_[a] = cells[a];
      length_[a] = length[a];
      spacing_[a] = length[a] / cells[a];
      extent_[a] = cells[a] + 2 * kGhostWidth;
    } else {
      cells_[a] = 1;
      length_[a] = 1.0;
      spacing_[a] = 1.0;
      extent_[a] = 1;
    }
  }
  stride_[0] = 1;
  stride_[1] = extent_[0];
  stride_[2] = static_cast<std::ptrdiff_t>(extent_[0]) * extent_[1];
}

Grid Grid::cube(int dims, int cells, double length) {
  return Grid(dims, {cells, cells, cells}, {length, length, length});
}

Grid Grid::with_spacing(int dims, std::array<int, 3> cells, std::array<double, 3> spacing) {
  std::array<double, 3> length{1.0, 1.0, 1.0};
  for (int a = 0; a < dims; ++a) length[a] = cells[a] * spacing[a];
  Grid g(dims, cells, length);
  for (int a = 0; a < dims; ++a) g.spacing_[a] = spacing[a];
  return g;
}

double Grid::cell_volume() const {
  double v = 1.0;
  for (int a = 0; a < dims_; ++a) v *= spacing_[a];
  return v;
}

double Grid::box_volume() const {
  double v = 1.0;
  for (int a = 0; a < dims_; ++a) v *= length_[a];
  return v;
}

std::size_t Grid::interior_count() const {
  return static_cast<std::size_t>(cells_[0]) * cells_[1] * cells_[2];
}

std::size_t Grid::padded_count() const {
  return static_cast<std::size_t>(extent_[0]) * extent_[1] * extent_[2];
}

std::vector<double> ScalarField::interior() const {
  std::vector<double> out;
  out.reserve(grid_.interior_count());
  for_each_cell(grid_, [&](int i, int j, int k) { out.push_back((*this)(i, j, k)); });
  return out;
}

void ScalarField::set_interior(const std::vector<double>& values) {
  if (values.size() != grid_.interior_count())
    throw std::invalid_argument("interior size mismatch");
  std::size_t n = 0;
  for_each_cell(grid_, [&](int i, int j, int k) { (*this)(i, j, k) = values[n++]; });
}

void ScalarField::fill(double value) { std::fill(values_.begin(), values_.end(), value); }

VectorField::VectorField(const Grid& grid, double value) {
  components_.reserve(grid.dims());
  for (int a = 0; a < grid.dims(); ++a) components_.emplace_back(grid, value);
}

void fill_halo(ScalarField& field) {
  const Grid& g = field.grid();
  double* v = field.data();
  for (int axis = 0; axis < g.dims(); ++axis) {
    const int n = g.cells(axis);
    const int w = g.ghost(axis);
    // Axes already processed span their ghosts so corners come out right.
    std::array<int, 3> lo{}, hi{};
    for (int a = 0; a < 3; ++a) {
      lo[a] = a < axis ? -g.ghost(a) : 0;
      hi[a] = a < axis ? g.cells(a) + g.ghost(a) : g.cells(a);
    }
    const std::ptrdiff_t shift = static_cast<std::ptrdiff_t>(n) * g.stride(axis);
    for (int layer = 0; layer < w; ++layer) {
      std::array<int, 3> left_lo = lo, right_lo = lo;
      left_lo[axis] = -w + layer;
      right_lo[axis] = n + layer;
      for (int k = (axis == 2 ? 0 : lo[2]); k < (axis == 2 ? 1 : hi[2]); ++k)
        for (int j = (axis == 1 ? 0 : lo[1]); j < (axis == 1 ? 1 : hi[1]); ++j)
          for (int i = (axis == 0 ? 0 : lo[0]); i < (axis == 0 ? 1 : hi[0]); ++i) {
            std::array<int, 3> c{i, j, k};
            c[axis] = left_lo[axis];
            const std::size_t l = g.index(c[0], c[1], c[2]);
            v[l] = v[l + shift];
            c[axis] = right_lo[axis];
            const std::size_t r = g.index(c[0], c[1], c[2]);
            v[r] = v[r - shift];
          }
    }
  }
}

void fill_halo(VectorField& field) {
  for (int a = 0; a < field.size(); ++a) fill_halo(field[a]);
}

double integrate(const ScalarField& field) {
  // Neumaier summation keeps the result independent of cancellation order.
  double sum = 0.0, comp = 0.0;
  for_each_cell(field.grid(), [&](int i, int j, int k) {
    const double x = field(i, j, k);
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      comp += (sum - t) + x;
    else
      comp += (x - t) + sum;
    sum = t;
  });
  return (sum + comp) * field.grid().cell_volume();
}

double max_value(const ScalarField& field) {
  double m = -std::numeric_limits<double>::infinity();
  for_each_cell(field.grid(), [&](int i, int j, int k) { m = std::max(m, field(i, j, k)); });
  return m;
}

}  // namespace vasnet
