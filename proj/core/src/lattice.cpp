#include "spdelab/lattice.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace spdelab {

int FrequencyLattice::index_of(int mode) const {
  int idx = -1;
  if (basis == BasisKind::TorusComplex) {
    idx = mode - (-M / 2 + 1);
  } else {
    idx = mode - 1;
  }
  if (idx < 0 || idx >= M) {
    throw std::out_of_range("lattice: mode " + std::to_string(mode) + " not retained (M=" +
                            std::to_string(M) + ")");
  }
  return idx;
}

FrequencyLattice build_lattice(BasisKind basis, GeneratorKind generator, int M) {
  if (M < 2) {
    throw std::invalid_argument("lattice: M must be >= 2, got " + std::to_string(M));
  }
  if (basis == BasisKind::TorusComplex && !std::has_single_bit(static_cast<unsigned>(M))) {
    throw std::invalid_argument("lattice: torus M must be a power of two, got " +
                                std::to_string(M));
  }
  if (basis == BasisKind::DirichletSine && generator == GeneratorKind::Schrodinger) {
    throw std::invalid_argument("lattice: (DirichletSine, Schrodinger) is not supported");
  }

  FrequencyLattice lat;
  lat.basis = basis;
  lat.generator = generator;
  lat.M = M;
  lat.modes.resize(M);
  lat.lambda.resize(M);

  if (basis == BasisKind::TorusComplex) {
    for (int i = 0; i < M; ++i) {
      const int l = -M / 2 + 1 + i;
      lat.modes[i] = l;
      const double l2 = static_cast<double>(l) * static_cast<double>(l);
      lat.lambda[i] = (generator == GeneratorKind::Wave) ? 1.0 + l2 : l2;
    }
  } else {
    constexpr double pi = std::numbers::pi;
    for (int i = 0; i < M; ++i) {
      const int m = i + 1;
      lat.modes[i] = m;
      lat.lambda[i] = pi * pi * static_cast<double>(m) * static_cast<double>(m);
    }
  }
  return lat;
}

std::shared_ptr<const FrequencyLattice> make_lattice(BasisKind basis, GeneratorKind generator,
                                                     int M) {
  return std::make_shared<const FrequencyLattice>(build_lattice(basis, generator, M));
}

}  // namespace spdelab
