#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace vasnet {

// Ghost layers on every active axis. The limited flux reads two cells
// upwind of an interface, the diffusion stencil one.
inline constexpr int kGhostWidth = 2;

// Uniform periodic Cartesian grid in 1, 2 or 3 dimensions. Axes beyond
// dims() are inactive: one cell, no ghosts, unit spacing.
//
// Storage order is x fastest ("axis-major"); interior cell (i, j, k) lives at
// index((i, j, k)) with ghost cells at coordinates -2, -1 and N, N+1.
class Grid {
 public:
  Grid() = default;
  Grid(int dims, std::array<int, 3> cells, std::array<double, 3> length);

  // Same cell count and box length on every active axis.
  static Grid cube(int dims, int cells, double length);

  // Sub-grid that keeps the given spacing bit-for-bit (length = cells * h).
  static Grid with_spacing(int dims, std::array<int, 3> cells, std::array<double, 3> spacing);

  int dims() const { return dims_; }
  int cells(int axis) const { return cells_[axis]; }
  double length(int axis) const { return length_[axis]; }
  double spacing(int axis) const { return spacing_[axis]; }
  int ghost(int axis) const { return axis < dims_ ? kGhostWidth : 0; }

  // h_x * h_y * h_z over active axes.
  double cell_volume() const;
  double box_volume() const;
  std::size_t interior_count() const;

  int extent(int axis) const { return extent_[axis]; }
  std::ptrdiff_t stride(int axis) const { return stride_[axis]; }
  std::size_t padded_count() const;

  std::size_t index(int i, int j = 0, int k = 0) const {
    return static_cast<std::size_t>((i + ghost(0)) + stride_[1] * (j + ghost(1)) +
                                    stride_[2] * (k + ghost(2)));
  }

  // Cell-centre coordinate along an axis.
  double center(int axis, int i) const { return (i + 0.5) * spacing_[axis]; }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.dims_ == b.dims_ && a.cells_ == b.cells_ && a.length_ == b.length_;
  }

 private:
  int dims_ = 1;
  std::array<int, 3> cells_{1, 1, 1};
  std::array<double, 3> length_{1.0, 1.0, 1.0};
  std::array<double, 3> spacing_{1.0, 1.0, 1.0};
  std::array<int, 3> extent_{1, 1, 1};
  std::array<std::ptrdiff_t, 3> stride_{1, 1, 1};
};

// Calls f(i, j, k) for every interior cell in storage order.
template <class F>
void for_each_cell(const Grid& g, F&& f) {
  for (int k = 0; k < g.cells(2); ++k)
    for (int j = 0; j < g.cells(1); ++j)
      for (int i = 0; i < g.cells(0); ++i) f(i, j, k);
}

// Cell-averaged scalar on a grid, interior plus ghosts.
class ScalarField {
 public:
  ScalarField() = default;
  explicit ScalarField(const Grid& grid, double value = 0.0)
      : grid_(grid), values_(grid.padded_count(), value) {}

  const Grid& grid() const { return grid_; }

  double& operator()(int i, int j = 0, int k = 0) { return values_[grid_.index(i, j, k)]; }
  double operator()(int i, int j = 0, int k = 0) const { return values_[grid_.index(i, j, k)]; }

  double* data() { return values_.data(); }
  const double* data() const { return values_.data(); }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }

  // Interior values in storage order, without ghosts.
  std::vector<double> interior() const;
  void set_interior(const std::vector<double>& values);

  // Sets every cell, ghosts included.
  void fill(double value);

 private:
  Grid grid_;
  std::vector<double> values_;
};

// One ScalarField per active axis.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(const Grid& grid, double value = 0.0);

  const Grid& grid() const { return components_.front().grid(); }
  int size() const { return static_cast<int>(components_.size()); }
  ScalarField& operator[](int axis) { return components_[axis]; }
  const ScalarField& operator[](int axis) const { return components_[axis]; }

 private:
  std::vector<ScalarField> components_;
};

// Copies each ghost cell from its periodic interior image; corners included.
void fill_halo(ScalarField& field);
void fill_halo(VectorField& field);

// Sum of interior values times the cell volume (compensated summation).
double integrate(const ScalarField& field);

// Largest interior value.
double max_value(const ScalarField& field);

}  // namespace vasnet
