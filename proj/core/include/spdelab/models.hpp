#pragma once
//
// The two model families.
//
// Schrodinger on the torus, complex field u:
//   du = -i (Delta + V) u dt + drift phi(u) dt + noise
//   drift(t, u)      = -i (Vable * u + phi(u))       (pointwise on the grid)
//   diffusion, additive               :  dW |-> -i dW              (coefficients)
//   diffusion, multiplicative (linear / nonlinear):
//                     (u, dW) |-> -i psi(u) * w(dW)   (pointwise product)
// where w(dW) is the noise field with coefficients dW_l on the basis.
//
// Wave pair (u, v) on a Dirichlet interval or the torus (Lambda = 1 - Delta):
//   drift(t, (u,v))     = (0, phi(u))                 (second component only)
//   diffusion(t,(u,v))  = (0, psi(u) * w(dW))
//
// phi / psi are pointwise Lipschitz maps from a fixed catalogue; all but the
// constant map fix f(0) = 0 so the Nemytskij operators vanish at the origin
// ("one" turns the wave diffusion into additive noise). t is threaded through
// the evaluation calls for structurally time-dependent drifts, but every
// built-in map ignores it.
//
// Wave noise presets, matching the three reference regimes:
//   TraceClass : Dirichlet basis, q_j = j^{-beta}, beta > 1 so that
//                Q^{1/2}: L^2 -> L^inf (delta = 1; rate 1 / 1/2 / 2/3).
//   WhiteNoise : Dirichlet basis, Q = I (delta < 1/2; rates ~1/2, ~1/4, ~1/3).
//   Smooth     : torus basis, q = max(1,|l|)^{-beta}; the smoothing index is
//                delta = min(1 + beta/2, 2) (implicit Euler rate delta/2,
//                Crank-Nicolson min(2 delta/3, 1)).

#include <memory>
#include <optional>
#include <span>
#include <variant>

#include "spdelab/lattice.hpp"
#include "spdelab/noise.hpp"
#include "spdelab/state.hpp"

namespace spdelab {

struct LipschitzMap {
  enum class Kind { Zero, One, Identity, SinScaled, ClippedLinear };
  Kind kind = Kind::Zero;
  double param = 1.0;  // SinScaled: scale; ClippedLinear: clip radius

  static LipschitzMap zero() { return {Kind::Zero, 0.0}; }
  static LipschitzMap one() { return {Kind::One, 1.0}; }  // constant 1: additive diffusion
  static LipschitzMap identity() { return {Kind::Identity, 1.0}; }
  static LipschitzMap sin_scaled(double scale) { return {Kind::SinScaled, scale}; }
  static LipschitzMap clipped_linear(double radius);

  [[nodiscard]] bool is_zero() const { return kind == Kind::Zero; }
  [[nodiscard]] double lip() const;
  [[nodiscard]] cplx operator()(cplx z) const;
};

enum class NoiseMode { Additive, MultiplicativeLinear, MultiplicativeNonlinear };

struct SchrodingerModel {
  std::shared_ptr<const FrequencyLattice> lattice;  // TorusComplex, Schrodinger
  NoiseMode noise_mode = NoiseMode::Additive;
  CovarianceSpec cov;
  LipschitzMap phi = LipschitzMap::zero();      // drift nonlinearity
  LipschitzMap psi = LipschitzMap::identity();  // diffusion factor (multiplicative)
  std::optional<SpectralState> potential;       // V; empty means V = 0
  SpectralState u0;
};

struct WaveModel {
  enum class Preset { TraceClass, WhiteNoise, Smooth };
  std::shared_ptr<const FrequencyLattice> lattice;  // Wave generator
  Preset preset = Preset::TraceClass;
  CovarianceSpec cov;
  LipschitzMap phi = LipschitzMap::zero();
  LipschitzMap psi = LipschitzMap::identity();
  double delta = 1.0;  // smoothing index of the preset
  SpectralState u0;    // two components (position, velocity)
};

// Validating factories.
[[nodiscard]] SchrodingerModel make_schrodinger(std::shared_ptr<const FrequencyLattice> lattice,
                                                NoiseMode noise_mode, CovarianceSpec cov,
                                                LipschitzMap phi, LipschitzMap psi,
                                                std::optional<SpectralState> potential,
                                                SpectralState u0);

[[nodiscard]] WaveModel make_wave(std::shared_ptr<const FrequencyLattice> lattice,
                                  WaveModel::Preset preset, double beta, LipschitzMap phi,
                                  LipschitzMap psi, SpectralState u0);

using Model = std::variant<SchrodingerModel, WaveModel>;

[[nodiscard]] const FrequencyLattice& model_lattice(const Model& m);
[[nodiscard]] const std::shared_ptr<const FrequencyLattice>& model_lattice_ptr(const Model& m);
[[nodiscard]] int model_components(const Model& m);
[[nodiscard]] const SpectralState& model_initial_state(const Model& m);
[[nodiscard]] const CovarianceSpec& model_covariance(const Model& m);

// True when drift(t, u) vanishes identically (phi zero and no potential);
// stepping skips the transforms entirely then.
[[nodiscard]] bool drift_is_zero(const Model& m);

// y += k * drift(t, u)
void accumulate_drift(const Model& m, double t, const SpectralState& u, double k,
                      SpectralState& y);

// y += diffusion(t, u) dW, where dW holds one per-mode increment per entry
// (storage order). Additive diffusion never touches u.
void accumulate_diffusion(const Model& m, double t, const SpectralState& u,
                          std::span<const double> dW, SpectralState& y);

}  // namespace spdelab
