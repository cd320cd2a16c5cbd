#include "spdelab/propagator.hpp"

#include <cmath>
#include <stdexcept>

namespace spdelab {

void DiagonalPropagator::apply_inplace(SpectralState& s) const {
  if (s.components != components) {
    throw std::invalid_argument("propagator: component count mismatch");
  }
  const int M = s.M();
  if (components == 1) {
    if (static_cast<int>(w.size()) != M) throw std::invalid_argument("propagator: size mismatch");
    for (int i = 0; i < M; ++i) s.c[i] *= w[i];
  } else {
    if (static_cast<int>(block.size()) != M) {
      throw std::invalid_argument("propagator: size mismatch");
    }
    for (int i = 0; i < M; ++i) {
      const auto& b = block[i];
      const cplx u = s.at(0, i), v = s.at(1, i);
      s.at(0, i) = b[0] * u + b[1] * v;
      s.at(1, i) = b[2] * u + b[3] * v;
    }
  }
}

SpectralState DiagonalPropagator::apply(const SpectralState& s) const {
  SpectralState out = s;
  apply_inplace(out);
  return out;
}

DiagonalPropagator semigroup_propagator(const FrequencyLattice& lat, double t) {
  DiagonalPropagator p;
  if (lat.generator == GeneratorKind::Schrodinger) {
    p.components = 1;
    p.w.resize(lat.M);
    for (int i = 0; i < lat.M; ++i) {
      const double th = t * lat.lambda[i];
      p.w[i] = cplx{std::cos(th), std::sin(th)};  // exp(i t lambda)
    }
  } else {
    p.components = 2;
    p.block.resize(lat.M);
    for (int i = 0; i < lat.M; ++i) {
      const double mu = std::sqrt(lat.lambda[i]);
      const double c = std::cos(t * mu), s = std::sin(t * mu);
      p.block[i] = {c, s / mu, -mu * s, c};
    }
  }
  return p;
}

DiagonalPropagator compose(const DiagonalPropagator& p, const DiagonalPropagator& q) {
  if (p.components != q.components) {
    throw std::invalid_argument("propagator: compose component mismatch");
  }
  DiagonalPropagator r;
  r.components = p.components;
  if (p.components == 1) {
    if (p.w.size() != q.w.size()) throw std::invalid_argument("propagator: compose size mismatch");
    r.w.resize(p.w.size());
    for (size_t i = 0; i < p.w.size(); ++i) r.w[i] = p.w[i] * q.w[i];
  } else {
    if (p.block.size() != q.block.size()) {
      throw std::invalid_argument("propagator: compose size mismatch");
    }
    r.block.resize(p.block.size());
    for (size_t i = 0; i < p.block.size(); ++i) {
      const auto& a = p.block[i];
      const auto& b = q.block[i];
      r.block[i] = {a[0] * b[0] + a[1] * b[2], a[0] * b[1] + a[1] * b[3],
                    a[2] * b[0] + a[3] * b[2], a[2] * b[1] + a[3] * b[3]};
    }
  }
  return r;
}

}  // namespace spdelab
