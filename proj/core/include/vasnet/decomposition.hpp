#pragma once

#include <array>
#include <span>
#include <vector>

#include "vasnet/grid.hpp"

namespace vasnet {

// One rectangular piece of the global grid.
struct Subdomain {
  int rank = 0;
  std::array<int, 3> coord{0, 0, 0};   // position in the block lattice
  std::array<int, 3> offset{0, 0, 0};  // global index of local cell 0
  Grid grid;                           // local grid, global spacing
};

// Tensor-product split of a periodic grid among workers. Slabs along the
// outermost axis are preferred; when there are more workers than slabs
// of kGhostWidth planes the next axis is split too (pencils).
class Decomposition {
 public:
  Decomposition(const Grid& global, int workers);

  const Grid& global() const { return global_; }
  int size() const { return static_cast<int>(blocks_.size()); }
  const Subdomain& block(int rank) const { return blocks_[rank]; }
  std::array<int, 3> splits() const { return splits_; }

  // Rank of the periodic neighbour along axis in direction dir = -1 or +1.
  int neighbor(int rank, int axis, int dir) const;

 private:
  int rank_of(std::array<int, 3> coord) const;

  Grid global_;
  std::array<int, 3> splits_{1, 1, 1};
  std::vector<Subdomain> blocks_;
};

// Throws InvalidDecomposition when a block would be thinner than the halo.
Decomposition decompose_domain(const Grid& grid, int workers);

// Copies the block's interior out of a global field and back.
void scatter(const Decomposition& d, int rank, const ScalarField& global, ScalarField& local);
void gather(const Decomposition& d, int rank, const ScalarField& local, ScalarField& global);

// Fills the ghosts of fields[rank] along one axis from the neighbouring
// blocks' interiors (and their ghosts on lower axes). Exchanging axes
// 0..dims-1 in order, with a barrier between axes, reproduces fill_halo
// on the assembled field.
void exchange_axis(const Decomposition& d, int rank, int axis,
                   std::span<ScalarField* const> fields_by_rank);

}  // namespace vasnet
