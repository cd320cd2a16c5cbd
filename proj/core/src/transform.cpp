#include "spdelab/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <unordered_map>

namespace spdelab {

namespace {

// The FFTW planner mutates global state; serialize create/destroy.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

constexpr double two_pi = 2.0 * std::numbers::pi;

}  // namespace

SpectralTransform::SpectralTransform(std::shared_ptr<const FrequencyLattice> lattice)
    : lat_(std::move(lattice)) {
  if (!lat_) throw std::invalid_argument("transform: null lattice");
  const int M = lat_->M;
  scratch_.assign(M, cplx{});
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (lat_->basis == BasisKind::TorusComplex) {
    auto* buf = reinterpret_cast<fftw_complex*>(scratch_.data());
    plan_fwd_ = fftw_plan_dft_1d(M, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    plan_bwd_ = fftw_plan_dft_1d(M, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  } else {
    rin_.assign(M, 0.0);
    rout_.assign(M, 0.0);
    plan_fwd_ = fftw_plan_r2r_1d(M, rin_.data(), rout_.data(), FFTW_RODFT00,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    plan_bwd_ = plan_fwd_;  // DST-I is its own transform kind
  }
  if (!plan_fwd_ || !plan_bwd_) throw std::runtime_error("transform: FFTW plan creation failed");
}

SpectralTransform::~SpectralTransform() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (lat_->basis == BasisKind::TorusComplex) {
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(plan_bwd_));
  } else {
    fftw_destroy_plan(static_cast<fftw_plan>(plan_fwd_));
  }
}

std::vector<double> SpectralTransform::grid_points() const {
  const int M = lat_->M;
  std::vector<double> x(M);
  if (lat_->basis == BasisKind::TorusComplex) {
    for (int m = 0; m < M; ++m) x[m] = two_pi * m / M;
  } else {
    for (int m = 0; m < M; ++m) x[m] = static_cast<double>(m + 1) / (M + 1);
  }
  return x;
}

void SpectralTransform::to_grid(std::span<const cplx> coeffs, std::span<cplx> values) const {
  const int M = lat_->M;
  if (static_cast<int>(coeffs.size()) != M || static_cast<int>(values.size()) != M) {
    throw std::invalid_argument("transform: span size mismatch");
  }
  if (lat_->basis == BasisKind::TorusComplex) {
    // storage order l = -M/2+1..M/2 -> FFT bin (l + M) mod M
    const int l0 = -M / 2 + 1;
    for (int i = 0; i < M; ++i) scratch_[(l0 + i + M) % M] = coeffs[i];
    fftw_execute_dft(static_cast<fftw_plan>(plan_bwd_),
                     reinterpret_cast<fftw_complex*>(scratch_.data()),
                     reinterpret_cast<fftw_complex*>(values.data()));
    const double s = 1.0 / std::sqrt(two_pi);
    for (int m = 0; m < M; ++m) values[m] *= s;
  } else {
    // v = RODFT00(c) / sqrt(2), separately on real and imaginary parts
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < M; ++i) rin_[i] = pass == 0 ? coeffs[i].real() : coeffs[i].imag();
      fftw_execute_r2r(static_cast<fftw_plan>(plan_fwd_), rin_.data(), rout_.data());
      const double s = 1.0 / std::sqrt(2.0);
      if (pass == 0) {
        for (int m = 0; m < M; ++m) scratch_[m].real(s * rout_[m]);
      } else {
        for (int m = 0; m < M; ++m) scratch_[m].imag(s * rout_[m]);
      }
    }
    for (int m = 0; m < M; ++m) values[m] = scratch_[m];
  }
}

void SpectralTransform::to_coeffs(std::span<const cplx> values, std::span<cplx> coeffs) const {
  const int M = lat_->M;
  if (static_cast<int>(coeffs.size()) != M || static_cast<int>(values.size()) != M) {
    throw std::invalid_argument("transform: span size mismatch");
  }
  if (lat_->basis == BasisKind::TorusComplex) {
    for (int m = 0; m < M; ++m) scratch_[m] = values[m];
    fftw_execute_dft(static_cast<fftw_plan>(plan_fwd_),
                     reinterpret_cast<fftw_complex*>(scratch_.data()),
                     reinterpret_cast<fftw_complex*>(scratch_.data()));
    const int l0 = -M / 2 + 1;
    const double s = std::sqrt(two_pi) / M;
    for (int i = 0; i < M; ++i) coeffs[i] = s * scratch_[(l0 + i + M) % M];
  } else {
    // c = RODFT00(v) * sqrt(2) / (2 (M+1))  (RODFT00 composed with itself is 2(M+1) id)
    for (int pass = 0; pass < 2; ++pass) {
      for (int m = 0; m < M; ++m) rin_[m] = pass == 0 ? values[m].real() : values[m].imag();
      fftw_execute_r2r(static_cast<fftw_plan>(plan_fwd_), rin_.data(), rout_.data());
      const double s = std::sqrt(2.0) / (2.0 * (M + 1));
      if (pass == 0) {
        for (int i = 0; i < M; ++i) scratch_[i].real(s * rout_[i]);
      } else {
        for (int i = 0; i < M; ++i) scratch_[i].imag(s * rout_[i]);
      }
    }
    for (int i = 0; i < M; ++i) coeffs[i] = scratch_[i];
  }
}

const SpectralTransform& cached_transform(const std::shared_ptr<const FrequencyLattice>& lattice) {
  thread_local std::unordered_map<const FrequencyLattice*, std::unique_ptr<SpectralTransform>>
      cache;
  auto& slot = cache[lattice.get()];
  if (!slot) slot = std::make_unique<SpectralTransform>(lattice);
  return *slot;
}

SpectralState physical_product(const SpectralState& a, const SpectralState& b) {
  if (a.lattice.get() != b.lattice.get()) {
    throw std::invalid_argument("physical_product: lattice mismatch");
  }
  if (a.components != 1 || b.components != 1) {
    throw std::invalid_argument("physical_product: single-component states expected");
  }
  const SpectralTransform& tr = cached_transform(a.lattice);
  const int M = a.M();
  std::vector<cplx> ga(M), gb(M);
  tr.to_grid(a.component(0), ga);
  tr.to_grid(b.component(0), gb);
  for (int m = 0; m < M; ++m) ga[m] *= gb[m];
  SpectralState out = zero_state(a.lattice, 1);
  tr.to_coeffs(ga, out.component(0));
  return out;
}

}  // namespace spdelab
