#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "vasnet/state.hpp"

namespace vasnet {

// Counter-based generator: every draw is a pure function of
// (seed, run, index, lane), so positions do not depend on draw order.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t run, std::uint64_t index,
                           std::uint64_t lane);
// Uniform in [0, 1) with 53 random bits.
double counter_uniform(std::uint64_t seed, std::uint64_t run, std::uint64_t index,
                       std::uint64_t lane);

using Point = std::array<double, 3>;

// round(n_bar * box volume).
std::size_t cell_count(const Grid& grid, double n_bar);

// Uniform positions in the box for cells 0..count-1.
std::vector<Point> random_positions(const Grid& grid, std::size_t count, std::uint64_t seed,
                                    std::uint64_t run = 0);

// Adds weight times the cell average of a unit-mass Gaussian of width sigma
// centred at x0, wrapped periodically (tails beyond 8 sigma dropped).
void add_bump(ScalarField& n, const Point& x0, double sigma, double weight = 1.0);

// n = sum of bumps, p = 0, c = 0. Throws UnresolvedBump if sigma < h.
SimState seed_bumps(const Grid& grid, const ModelParams& params, std::span<const Point> centers);

// round(n_bar * volume) bumps at random positions, zero velocity, no chemoattractant.
SimState seed_initial_state(const Grid& grid, const ModelParams& params, double n_bar,
                            std::uint64_t seed, std::uint64_t run = 0);

// Independent uniform values in [lo, hi) per interior cell; halos filled.
ScalarField random_field(const Grid& grid, double lo, double hi, std::uint64_t seed,
                         std::uint64_t run = 0);

}  // namespace vasnet
