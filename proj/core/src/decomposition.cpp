#include "vasnet/decomposition.hpp"

#include <string>

#include "vasnet/errors.hpp"

namespace vasnet {
namespace {

std::vector<int> split_sizes(int n, int parts) {
  std::vector<int> sizes(parts, n / parts);
  for (int b = 0; b < n % parts; ++b) ++sizes[b];
  return sizes;
}

}  // namespace

Decomposition::Decomposition(const Grid& global, int workers) : global_(global) {
  if (workers < 1) throw InvalidDecomposition("worker count must be >= 1");
  const int dims = global.dims();
  const int outer = dims - 1;
  if (workers * kGhostWidth <= global.cells(outer)) {
    splits_[outer] = workers;
  } else if (dims >= 2) {
    // Pencils: largest slab count along the outer axis that still holds halos.
    int best = 0;
    for (int p = workers; p >= 1; --p) {
      if (workers % p != 0) continue;
      const int q = workers / p;
      if (p * kGhostWidth <= global.cells(outer) && q * kGhostWidth <= global.cells(outer - 1)) {
        best = p;
        break;
      }
    }
    if (best == 0)
      throw InvalidDecomposition(std::to_string(workers) + " workers leave a block thinner than the halo");
    splits_[outer] = best;
    splits_[outer - 1] = workers / best;
  } else {
    throw InvalidDecomposition(std::to_string(workers) + " workers leave a block thinner than the halo");
  }

  std::array<std::vector<int>, 3> sizes;
  for (int a = 0; a < 3; ++a) sizes[a] = split_sizes(global.cells(a), splits_[a]);
  std::array<double, 3> h{global.spacing(0), global.spacing(1), global.spacing(2)};
  for (int bz = 0; bz < splits_[2]; ++bz)
    for (int by = 0; by < splits_[1]; ++by)
      for (int bx = 0; bx < splits_[0]; ++bx) {
        Subdomain s;
        s.rank = static_cast<int>(blocks_.size());
        s.coord = {bx, by, bz};
        std::array<int, 3> cells{};
        for (int a = 0; a < 3; ++a) {
          int off = 0;
          for (int b = 0; b < s.coord[a]; ++b) off += sizes[a][b];
          s.offset[a] = off;
          cells[a] = sizes[a][s.coord[a]];
          if (a < dims && cells[a] < kGhostWidth)
            throw InvalidDecomposition("block thinner than the halo width");
        }
        s.grid = Grid::with_spacing(dims, cells, h);
        blocks_.push_back(std::move(s));
      }
}

int Decomposition::rank_of(std::array<int, 3> c) const {
  return c[0] + splits_[0] * (c[1] + splits_[1] * c[2]);
}

int Decomposition::neighbor(int rank, int axis, int dir) const {
  auto c = blocks_[rank].coord;
  c[axis] = (c[axis] + dir + splits_[axis]) % splits_[axis];
  return rank_of(c);
}

Decomposition decompose_domain(const Grid& grid, int workers) { return Decomposition(grid, workers); }

void scatter(const Decomposition& d, int rank, const ScalarField& global, ScalarField& local) {
  const Subdomain& s = d.block(rank);
  for_each_cell(s.grid, [&](int i, int j, int k) {
    local(i, j, k) = global(i + s.offset[0], j + s.offset[1], k + s.offset[2]);
  });
}

void gather(const Decomposition& d, int rank, const ScalarField& local, ScalarField& global) {
  const Subdomain& s = d.block(rank);
  for_each_cell(s.grid, [&](int i, int j, int k) {
    global(i + s.offset[0], j + s.offset[1], k + s.offset[2]) = local(i, j, k);
  });
}

void exchange_axis(const Decomposition& d, int rank, int axis,
                   std::span<ScalarField* const> fields_by_rank) {
  ScalarField& dst = *fields_by_rank[rank];
  const Grid& g = dst.grid();
  const int w = g.ghost(axis);
  if (w == 0) return;
  const ScalarField& left = *fields_by_rank[d.neighbor(rank, axis, -1)];
  const ScalarField& right = *fields_by_rank[d.neighbor(rank, axis, +1)];
  const int n_left = left.grid().cells(axis);

  std::array<int, 3> lo{}, hi{};
  for (int a = 0; a < 3; ++a) {
    lo[a] = a < axis ? -g.ghost(a) : 0;
    hi[a] = a < axis ? g.cells(a) + g.ghost(a) : g.cells(a);
  }
  const int n = g.cells(axis);
  for (int layer = 0; layer < w; ++layer) {
    for (int k = (axis == 2 ? 0 : lo[2]); k < (axis == 2 ? 1 : hi[2]); ++k)
      for (int j = (axis == 1 ? 0 : lo[1]); j < (axis == 1 ? 1 : hi[1]); ++j)
        for (int i = (axis == 0 ? 0 : lo[0]); i < (axis == 0 ? 1 : hi[0]); ++i) {
          std::array<int, 3> dc{i, j, k}, sc{i, j, k};
          dc[axis] = -w + layer;
          sc[axis] = n_left - w + layer;
          dst(dc[0], dc[1], dc[2]) = left(sc[0], sc[1], sc[2]);
          dc[axis] = n + layer;
          sc[axis] = layer;
          dst(dc[0], dc[1], dc[2]) = right(sc[0], sc[1], sc[2]);
        }
  }
}

}  // namespace vasnet
