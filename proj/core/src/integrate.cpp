#include "spdelab/integrate.hpp"

#include <cmath>
#include <stdexcept>

namespace spdelab {

namespace {

int steps_for(const WienerPath& path, double k) {
  const double k_ref = path.T / path.n_fine;
  const double f = k / k_ref;
  const int factor = static_cast<int>(std::lround(f));
  if (factor < 1 || std::abs(f - factor) > 1e-9 || path.n_fine % factor != 0) {
    throw std::invalid_argument("run_trajectory: k must be a whole multiple of T/n_fine");
  }
  return factor;
}

void check_batch(std::span<const Trajectory> refs, std::span<const Trajectory> apps, double p) {
  if (refs.size() != apps.size() || refs.empty()) {
    throw std::invalid_argument("error functional: batch sizes must match and be non-empty");
  }
  if (!(p >= 1.0)) throw std::invalid_argument("error functional: p must be >= 1");
  for (size_t s = 0; s < refs.size(); ++s) {
    if (refs[s].steps.size() != apps[s].steps.size()) {
      throw std::invalid_argument("error functional: recording grids differ");
    }
    for (size_t j = 0; j < refs[s].steps.size(); ++j) {
      if (std::abs(refs[s].steps[j] * refs[s].k - apps[s].steps[j] * apps[s].k) >
          1e-12 * std::max(1.0, refs[s].steps.back() * refs[s].k)) {
        throw std::invalid_argument("error functional: recording times differ");
      }
    }
  }
}

}  // namespace

SpectralState step(const Model& model, const DiagonalPropagator& R, const SpectralState& u,
                   double t, double k, std::span<const double> dW) {
  if (k == 0.0) return u;
  SpectralState y = u;
  accumulate_drift(model, t, u, k, y);
  accumulate_diffusion(model, t, u, dW, y);
  R.apply_inplace(y);
  return y;
}

Trajectory run_trajectory(const Model& model, const SchemeSpec& scheme, double k,
                          const WienerPath& path, std::span<const int> record) {
  const FrequencyLattice& lat = model_lattice(model);
  if (path.lattice.get() != &lat) {
    throw std::invalid_argument("run_trajectory: path lattice mismatch");
  }
  const int factor = steps_for(path, k);
  const int n = path.n_fine / factor;
  const IncrementGrid grid = coarsen(path, factor);
  const DiagonalPropagator R = discrete_propagator(scheme, lat, k);

  Trajectory traj;
  traj.k = k;
  auto want = [&](int j) {
    if (record.empty()) return true;
    for (int r : record) {
      if (r == j) return true;
    }
    return false;
  };

  SpectralState u = model_initial_state(model);
  if (want(0)) {
    traj.steps.push_back(0);
    traj.states.push_back(u);
  }
  for (int j = 1; j <= n; ++j) {
    u = step(model, R, u, (j - 1) * k, k, grid.step(j - 1));
    if (want(j)) {
      traj.steps.push_back(j);
      traj.states.push_back(u);
    }
  }
  return traj;
}

Trajectory reference_trajectory(const Model& model, const WienerPath& path) {
  return run_trajectory(model, SchemeSpec::exponential_euler(), path.T / path.n_fine, path);
}

Trajectory unrolled_additive_trajectory(const Model& model, const SchemeSpec& scheme, double k,
                                        const WienerPath& path) {
  const auto* s = std::get_if<SchrodingerModel>(&model);
  if (!s || s->noise_mode != NoiseMode::Additive || !drift_is_zero(model)) {
    throw std::invalid_argument(
        "unrolled_additive_trajectory: linear additive Schrodinger model required");
  }
  const FrequencyLattice& lat = *s->lattice;
  const int factor = steps_for(path, k);
  const int n = path.n_fine / factor;
  const IncrementGrid grid = coarsen(path, factor);
  const DiagonalPropagator R = discrete_propagator(scheme, lat, k);

  Trajectory traj;
  traj.k = k;
  traj.steps.reserve(n + 1);
  traj.states.reserve(n + 1);
  for (int j = 0; j <= n; ++j) {
    SpectralState st = zero_state(s->lattice, 1);
    for (int i = 0; i < lat.M; ++i) {
      // r^j u0 + sum_{i'=1..j} r^{j-i'+1} * (-i dW_{i'}): every increment,
      // the latest included, passes through the one-step map once
      const cplx r = R.w[i];
      cplx acc = std::pow(r, j) * s->u0.at(0, i);
      for (int jj = 1; jj <= j; ++jj) {
        acc += std::pow(r, j - jj + 1) * cplx{0.0, -grid.at(i, jj - 1)};
      }
      st.at(0, i) = acc;
    }
    traj.steps.push_back(j);
    traj.states.push_back(std::move(st));
  }
  return traj;
}

double uniform_error(std::span<const Trajectory> refs, std::span<const Trajectory> apps, double p,
                     double sigma) {
  check_batch(refs, apps, p);
  double acc = 0.0;
  for (size_t s = 0; s < refs.size(); ++s) {
    double worst = 0.0;
    for (size_t j = 0; j < refs[s].states.size(); ++j) {
      worst = std::max(worst, sobolev_distance(refs[s].states[j], apps[s].states[j], sigma));
    }
    acc += std::pow(worst, p);
  }
  return std::pow(acc / refs.size(), 1.0 / p);
}

double pointwise_error(std::span<const Trajectory> refs, std::span<const Trajectory> apps,
                       double p, double sigma) {
  check_batch(refs, apps, p);
  const size_t n_rec = refs[0].states.size();
  double worst = 0.0;
  for (size_t j = 0; j < n_rec; ++j) {
    double acc = 0.0;
    for (size_t s = 0; s < refs.size(); ++s) {
      acc += std::pow(sobolev_distance(refs[s].states[j], apps[s].states[j], sigma), p);
    }
    worst = std::max(worst, acc / refs.size());
  }
  return std::pow(worst, 1.0 / p);
}

double full_interval_error(std::span<const Trajectory> refs, std::span<const Trajectory> apps,
                           double p, double sigma) {
  if (refs.size() != apps.size() || refs.empty()) {
    throw std::invalid_argument("error functional: batch sizes must match and be non-empty");
  }
  if (!(p >= 1.0)) throw std::invalid_argument("error functional: p must be >= 1");
  double acc = 0.0;
  for (size_t s = 0; s < refs.size(); ++s) {
    const Trajectory& ref = refs[s];
    const Trajectory& app = apps[s];
    const double ratio = app.k / ref.k;
    const int factor = static_cast<int>(std::lround(ratio));
    if (factor < 1 || std::abs(ratio - factor) > 1e-9) {
      throw std::invalid_argument("full_interval_error: coarse k must be a multiple of fine k");
    }
    if (static_cast<int>(ref.states.size()) != (static_cast<int>(app.states.size()) - 1) * factor + 1) {
      throw std::invalid_argument("full_interval_error: reference must record every fine step");
    }
    double worst = 0.0;
    for (size_t f = 0; f < ref.states.size(); ++f) {
      const size_t j = std::min(f / factor, app.states.size() - 1);
      worst = std::max(worst, sobolev_distance(ref.states[f], app.states[j], sigma));
    }
    acc += std::pow(worst, p);
  }
  return std::pow(acc / refs.size(), 1.0 / p);
}

}  // namespace spdelab
