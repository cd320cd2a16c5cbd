#pragma once
//
// One-step recursion and trajectory drivers. Every scheme advances by
//
//   U^j = R_k ( U^{j-1} + k * drift(t_{j-1}, U^{j-1})
//                        + diffusion(t_{j-1}, U^{j-1}) dW_j ),
//
// i.e. the rational one-step map is applied to state + Euler drift + noise
// increment. The reference solution is the exponential Euler recursion on the
// fine grid (k_ref = T / n_fine) driven by the same Wiener path; coarser runs
// use summed increments of that path (noise.hpp), never fresh randomness.
//
// Error functionals over a batch of samples (one reference and one
// approximation per sample, identical recording grids, errors in the
// sigma-weighted X-norm):
//
//   uniform_error   = ( mean_s  max_j ||Ref_s(t_j) - App_s(t_j)||^p )^{1/p}
//   pointwise_error = max_j ( mean_s ||Ref_s(t_j) - App_s(t_j)||^p )^{1/p}
//   full_interval   = like uniform, but the max runs over the fine grid with
//                     the approximation extended as a piecewise constant,
//                     App~(t) = App(t_j) for t in [t_j, t_{j+1}).
//
// uniform >= pointwise always (max-mean exchange), full >= uniform (larger
// index set).

#include <optional>
#include <span>
#include <vector>

#include "spdelab/models.hpp"
#include "spdelab/noise.hpp"
#include "spdelab/propagator.hpp"
#include "spdelab/schemes.hpp"
#include "spdelab/state.hpp"

namespace spdelab {

struct Trajectory {
  double k = 0;
  std::vector<int> steps;             // recorded step indices, ascending, 0 first
  std::vector<SpectralState> states;  // one per recorded index
};

// Single step; k == 0 returns the state unchanged (degenerate guard).
[[nodiscard]] SpectralState step(const Model& model, const DiagonalPropagator& R,
                                 const SpectralState& u, double t, double k,
                                 std::span<const double> dW);

// Runs N = round(path.T / k) steps (k must be a whole multiple of
// k_ref = T / n_fine). Records the step indices in `record` (ascending,
// deduplicated expected); empty means record everything including step 0.
[[nodiscard]] Trajectory run_trajectory(const Model& model, const SchemeSpec& scheme, double k,
                                        const WienerPath& path,
                                        std::span<const int> record = {});

// Exponential Euler on the fine grid, recording every step.
[[nodiscard]] Trajectory reference_trajectory(const Model& model, const WienerPath& path);

// Unrolled variation-of-constants sum for the linear additive Schrodinger
// model (no potential, no drift): U^j = R^j u0 - i sum_{i<j} R^{j-i} dW_{i+1},
// evaluated mode by mode without the recursion. Oracle for run_trajectory.
[[nodiscard]] Trajectory unrolled_additive_trajectory(const Model& model,
                                                      const SchemeSpec& scheme, double k,
                                                      const WienerPath& path);

[[nodiscard]] double uniform_error(std::span<const Trajectory> refs,
                                   std::span<const Trajectory> apps, double p, double sigma);
[[nodiscard]] double pointwise_error(std::span<const Trajectory> refs,
                                     std::span<const Trajectory> apps, double p, double sigma);
// refs must carry every fine step (reference_trajectory output).
[[nodiscard]] double full_interval_error(std::span<const Trajectory> refs,
                                         std::span<const Trajectory> apps, double p,
                                         double sigma);

}  // namespace spdelab
