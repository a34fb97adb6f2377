#pragma once

#include "vasnet/grid.hpp"
#include "vasnet/model.hpp"

namespace vasnet {

// Cell density n, momentum p = n v and chemoattractant c.
struct SimState {
  Grid grid;
  ScalarField n;
  VectorField p;
  ScalarField c;
  double time = 0.0;
  long step = 0;
  ModelParams params;

  SimState() = default;
  SimState(const Grid& g, const ModelParams& prm) : grid(g), n(g), p(g), c(g), params(prm) {}

  void fill_halos() {
    fill_halo(n);
    fill_halo(p);
    fill_halo(c);
  }
};

// Right-hand sides of the momentum and chemoattractant balance.
struct SourceEval {
  VectorField momentum;
  ScalarField chem;
};

// n mu(c) grad c - n grad phi - beta(c) p, and alpha(c) n - c / tau.
SourceEval momentum_source(const SimState& state, const VectorField& grad_c,
                           const VectorField& grad_phi);

}  // namespace vasnet
