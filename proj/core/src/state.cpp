#include "spdelab/state.hpp"

#include <cmath>
#include <stdexcept>

namespace spdelab {

SpectralState zero_state(std::shared_ptr<const FrequencyLattice> lattice, int components) {
  if (!lattice) throw std::invalid_argument("state: null lattice");
  if (components != 1 && components != 2) {
    throw std::invalid_argument("state: components must be 1 or 2");
  }
  SpectralState s;
  s.lattice = std::move(lattice);
  s.components = components;
  s.c.assign(static_cast<size_t>(components) * s.lattice->M, cplx{0.0, 0.0});
  return s;
}

SpectralState single_mode_state(std::shared_ptr<const FrequencyLattice> lattice, int mode,
                                cplx amplitude, int component, int components) {
  SpectralState s = zero_state(std::move(lattice), components);
  if (component < 0 || component >= components) {
    throw std::invalid_argument("state: component out of range");
  }
  s.at(component, s.lattice->index_of(mode)) = amplitude;
  return s;
}

double sobolev_norm(const SpectralState& u, double sigma) {
  const FrequencyLattice& lat = *u.lattice;
  double acc = 0.0;
  if (u.components == 1) {
    for (int i = 0; i < lat.M; ++i) {
      const double base =
          (lat.basis == BasisKind::TorusComplex) ? 1.0 + lat.lambda[i] : lat.lambda[i];
      const double w = (sigma == 0.0) ? 1.0 : std::pow(base, sigma);
      acc += w * std::norm(u.at(0, i));
    }
  } else {
    for (int i = 0; i < lat.M; ++i) {
      const double lam = lat.lambda[i];
      const double w0 = (sigma == 0.0) ? 1.0 : std::pow(lam, sigma);
      const double w1 = std::pow(lam, sigma - 1.0);
      acc += w0 * std::norm(u.at(0, i)) + w1 * std::norm(u.at(1, i));
    }
  }
  return std::sqrt(acc);
}

double sobolev_distance(const SpectralState& a, const SpectralState& b, double sigma) {
  if (a.lattice.get() != b.lattice.get() || a.components != b.components) {
    throw std::invalid_argument("state: sobolev_distance operands incompatible");
  }
  const FrequencyLattice& lat = *a.lattice;
  double acc = 0.0;
  if (a.components == 1) {
    for (int i = 0; i < lat.M; ++i) {
      const double base =
          (lat.basis == BasisKind::TorusComplex) ? 1.0 + lat.lambda[i] : lat.lambda[i];
      const double w = (sigma == 0.0) ? 1.0 : std::pow(base, sigma);
      acc += w * std::norm(a.at(0, i) - b.at(0, i));
    }
  } else {
    for (int i = 0; i < lat.M; ++i) {
      const double lam = lat.lambda[i];
      const double w0 = (sigma == 0.0) ? 1.0 : std::pow(lam, sigma);
      const double w1 = std::pow(lam, sigma - 1.0);
      acc += w0 * std::norm(a.at(0, i) - b.at(0, i)) + w1 * std::norm(a.at(1, i) - b.at(1, i));
    }
  }
  return std::sqrt(acc);
}

void add_scaled(SpectralState& dst, const SpectralState& src, cplx factor) {
  if (dst.lattice.get() != src.lattice.get() || dst.components != src.components) {
    throw std::invalid_argument("state: add_scaled operands incompatible");
  }
  for (size_t i = 0; i < dst.c.size(); ++i) dst.c[i] += factor * src.c[i];
}

double max_abs_diff(const SpectralState& a, const SpectralState& b) {
  if (a.c.size() != b.c.size()) {
    throw std::invalid_argument("state: max_abs_diff operands incompatible");
  }
  double m = 0.0;
  for (size_t i = 0; i < a.c.size(); ++i) m = std::max(m, std::abs(a.c[i] - b.c[i]));
  return m;
}

}  // namespace spdelab
