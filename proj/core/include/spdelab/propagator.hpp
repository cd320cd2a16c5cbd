#pragma once
//
// Mode-diagonal propagators. The Schrodinger group acts on each retained mode
// by the unimodular factor exp(i t lambda); the wave group acts on the
// coefficient pair (u, v) of each mode by the rotation block
//
//   [ cos(t mu)        sin(t mu)/mu ]       mu = sqrt(lambda) > 0,
//   [ -mu sin(t mu)    cos(t mu)    ]
//
// which preserves |u|^2 + |v|^2/lambda exactly and has determinant 1. Time
// discretisation schemes produce propagators of the same two shapes (see
// schemes.hpp), so stepping code only ever applies one of these.

#include <array>
#include <complex>
#include <vector>

#include "spdelab/lattice.hpp"
#include "spdelab/state.hpp"

namespace spdelab {

struct DiagonalPropagator {
  int components = 1;
  std::vector<cplx> w;                      // components == 1: multiplier per mode
  std::vector<std::array<double, 4>> block; // components == 2: row-major [a b; c d] per mode

  void apply_inplace(SpectralState& s) const;
  [[nodiscard]] SpectralState apply(const SpectralState& s) const;
};

[[nodiscard]] DiagonalPropagator semigroup_propagator(const FrequencyLattice& lat, double t);

// p after q, i.e. (compose(p, q)).apply(s) == p.apply(q.apply(s)).
[[nodiscard]] DiagonalPropagator compose(const DiagonalPropagator& p, const DiagonalPropagator& q);

}  // namespace spdelab
