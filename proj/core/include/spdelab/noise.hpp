#pragma once
//
// Q-Wiener increments on the frequency lattice. The driving process is
// W(t) = sum_l sqrt(q_l) e_l beta_l(t) with independent real scalar Brownian
// motions beta_l, so a path is fully described by its per-mode fine-grid
// increments  dW_{l,i} ~ Normal(0, q_l T / n_fine), i = 0..n_fine-1.
// Real amplitudes are used for every basis, including the complex torus
// exponentials (the noise field is then complex-valued but not
// conjugate-symmetric, matching the reference experiment); reports record
// this convention.
//
// Coarser grids never resample: coarsen() sums consecutive fine increments
// left to right, so the reference run and every scheme run are driven by the
// same path and coarse totals match fine totals exactly in floating point.
//
// Streams are keyed (seed, mode position); the caller folds the sample index
// into the seed first (rng.hpp). Modes with q = 0 draw nothing and stay
// exactly zero.

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <vector>

#include "spdelab/lattice.hpp"

namespace spdelab {

struct CovarianceSpec {
  enum class Kind { PowerLaw, Identity, Eigenlist };
  Kind kind = Kind::Identity;
  double beta = 0.0;           // PowerLaw: q = 1/(1 + |mode|^beta)
  std::vector<double> values;  // Eigenlist: q per mode in storage order

  static CovarianceSpec power_law(double beta);
  static CovarianceSpec identity();
  static CovarianceSpec eigenlist(std::vector<double> values);

  // Eigenlist with q = max(1, |mode|)^{-exponent}: the mode-magnitude decay
  // used in the wave experiments (Dirichlet modes are 1-based already).
  static CovarianceSpec polynomial_decay(double exponent, const FrequencyLattice& lat);

  // q per mode in storage order; validates sizes and non-negativity.
  [[nodiscard]] std::vector<double> eigenvalues(const FrequencyLattice& lat) const;
};

struct WienerPath {
  std::shared_ptr<const FrequencyLattice> lattice;
  double T = 0;
  int n_fine = 0;
  std::vector<double> incr;  // mode-major: incr[idx * n_fine + i]

  [[nodiscard]] std::span<const double> row(int idx) const {
    return {incr.data() + static_cast<size_t>(idx) * n_fine, static_cast<size_t>(n_fine)};
  }
};

// n_fine must be a positive power of two; T > 0.
[[nodiscard]] WienerPath sample_path(std::uint64_t seed, const CovarianceSpec& cov,
                                     std::shared_ptr<const FrequencyLattice> lattice, int n_fine,
                                     double T);

struct IncrementGrid {
  int n_steps = 0;
  int M = 0;
  std::vector<double> d;  // step-major: d[j * M + idx]

  [[nodiscard]] double at(int idx, int j) const { return d[static_cast<size_t>(j) * M + idx]; }
  [[nodiscard]] std::span<const double> step(int j) const {
    return {d.data() + static_cast<size_t>(j) * M, static_cast<size_t>(M)};
  }
};

// factor must divide n_fine; coarse increment j is the left-to-right sum of
// fine increments [j*factor, (j+1)*factor).
[[nodiscard]] IncrementGrid coarsen(const WienerPath& path, int factor);

// Binary layout: 8-byte header (uint32 n_fine, uint32 mode count, little
// endian), then mode-major rows of n_fine float64 increments.
void dump_path(const WienerPath& path, const std::filesystem::path& file);

}  // namespace spdelab
