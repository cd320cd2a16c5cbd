#pragma once
//
// A spectral state is the coefficient vector of a truncated expansion in the
// lattice basis. One component for the Schrodinger setting; the wave setting
// uses two components (position, velocity) stored back to back.
//
// Norms: the discrete X-norm of a state is exactly the weighted l2 norm of
// its retained coefficients (the transforms are isometric onto the lattice
// span, see transform.hpp). sobolev_norm(u, sigma) uses
//
//   one component, torus    : weight (1 + l^2)^sigma          (= (1+lambda)^sigma)
//   one component, Dirichlet: weight lambda^sigma
//   two components (wave)   : lambda^sigma on the first component and
//                             lambda^(sigma-1) on the second, summed.
//
// sigma = 0 gives the plain L2 norm (first component) resp. the energy-type
// pair norm |u|^2 + lambda^{-1} |v|^2.

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "spdelab/lattice.hpp"

namespace spdelab {

using cplx = std::complex<double>;

struct SpectralState {
  std::shared_ptr<const FrequencyLattice> lattice;
  int components = 1;
  std::vector<cplx> c;  // component-major: c[comp * M + idx]

  [[nodiscard]] int M() const { return lattice ? lattice->M : 0; }

  [[nodiscard]] cplx& at(int comp, int idx) { return c[static_cast<size_t>(comp) * M() + idx]; }
  [[nodiscard]] const cplx& at(int comp, int idx) const {
    return c[static_cast<size_t>(comp) * M() + idx];
  }

  [[nodiscard]] std::span<cplx> component(int comp) {
    return {c.data() + static_cast<size_t>(comp) * M(), static_cast<size_t>(M())};
  }
  [[nodiscard]] std::span<const cplx> component(int comp) const {
    return {c.data() + static_cast<size_t>(comp) * M(), static_cast<size_t>(M())};
  }
};

[[nodiscard]] SpectralState zero_state(std::shared_ptr<const FrequencyLattice> lattice,
                                       int components = 1);

// All-zero state with a single coefficient set; `mode` is a lattice mode index
// (not a storage position).
[[nodiscard]] SpectralState single_mode_state(std::shared_ptr<const FrequencyLattice> lattice,
                                              int mode, cplx amplitude, int component = 0,
                                              int components = 1);

[[nodiscard]] double sobolev_norm(const SpectralState& u, double sigma);

// ||a - b||_sigma without materializing the difference state.
[[nodiscard]] double sobolev_distance(const SpectralState& a, const SpectralState& b, double sigma);

// dst += factor * src (same lattice and component count required)
void add_scaled(SpectralState& dst, const SpectralState& src, cplx factor);

[[nodiscard]] double max_abs_diff(const SpectralState& a, const SpectralState& b);

}  // namespace spdelab
