#pragma once
//
// Collocation-grid transforms between coefficient space and grid values.
//
// Torus (M grid points x_m = 2 pi m / M, m = 0..M-1):
//   to_grid   : v_m = (2 pi)^{-1/2} sum_l c_l exp(i l x_m)          (complex FFT)
//   to_coeffs : c_l = (2 pi)^{1/2} / M sum_m v_m exp(-i l x_m)
// Dirichlet (M interior points xi_m = m/(M+1), m = 1..M):
//   to_grid   : v_m = sum_i c_i sqrt(2) sin(i pi xi_m)              (DST-I)
//   to_coeffs : c_i = sqrt(2)/(M+1) sum_m v_m sin(i pi xi_m)
//
// Both directions are exact inverses of each other on the lattice span, and
// both are isometries between the coefficient l2 norm and the quadrature norm
//   torus    : (2 pi / M   * sum_m |v_m|^2)^{1/2}
//   Dirichlet: (1/(M+1)    * sum_m |v_m|^2)^{1/2}
// with constant exactly 1 (tests pin this).
//
// Pointwise products of lattice functions are evaluated on this grid and
// transformed back; frequencies outside the lattice alias back onto it in the
// usual collocation manner (no 2/3-rule padding is applied).
//
// Plans are created with FFTW_ESTIMATE so plan selection never depends on
// runtime measurements (identical runs stay bit-identical), and with
// FFTW_UNALIGNED so they can execute on arbitrary caller buffers. Plan
// creation/destruction is serialized internally (the FFTW planner is not
// thread safe); executing distinct plan objects concurrently is fine. Use one
// SpectralTransform per thread, or the per-thread cache below.

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "spdelab/lattice.hpp"
#include "spdelab/state.hpp"

namespace spdelab {

class SpectralTransform {
 public:
  explicit SpectralTransform(std::shared_ptr<const FrequencyLattice> lattice);
  ~SpectralTransform();
  SpectralTransform(const SpectralTransform&) = delete;
  SpectralTransform& operator=(const SpectralTransform&) = delete;

  [[nodiscard]] const FrequencyLattice& lattice() const { return *lat_; }
  [[nodiscard]] int grid_size() const { return lat_->M; }
  [[nodiscard]] std::vector<double> grid_points() const;

  // One component's coefficients <-> grid values; spans must have length M.
  // In-place operation (coeffs.data() == values.data()) is allowed.
  void to_grid(std::span<const cplx> coeffs, std::span<cplx> values) const;
  void to_coeffs(std::span<const cplx> values, std::span<cplx> coeffs) const;

 private:
  std::shared_ptr<const FrequencyLattice> lat_;
  void* plan_fwd_ = nullptr;  // fftw_plan, kept opaque here
  void* plan_bwd_ = nullptr;
  mutable std::vector<cplx> scratch_;
  mutable std::vector<double> rin_, rout_;
};

// Per-thread transform cache keyed by lattice identity. Handy inside model
// evaluations that should not carry workspace objects around.
[[nodiscard]] const SpectralTransform& cached_transform(
    const std::shared_ptr<const FrequencyLattice>& lattice);

// Pointwise (Nemytskij) product a*b of two single-component states on the
// shared collocation grid, truncated back to the lattice.
[[nodiscard]] SpectralState physical_product(const SpectralState& a, const SpectralState& b);

}  // namespace spdelab
