#pragma once
//
// Frequency lattices for the two spectral Galerkin settings supported here.
//
//   TorusComplex  : complex exponentials e_l(x) = (2*pi)^{-1/2} exp(i l x) on
//                   [0, 2*pi], retained modes l = -M/2+1, ..., M/2 (M a power
//                   of two so the FFT lines up with the mode set).
//   DirichletSine : e_i(x) = sqrt(2) sin(i pi x) on (0, 1), retained modes
//                   i = 1, ..., M.
//
// `lambda` holds the eigenvalue of the positive spatial operator per mode:
//
//   Schrodinger on the torus : -d^2/dx^2,      lambda_l = l^2
//   wave on (0,1), Dirichlet : -d^2/dx^2,      lambda_i = pi^2 i^2
//   wave on the torus        : 1 - d^2/dx^2,   lambda_l = 1 + l^2
//
// (The +1 shift in the torus wave setting keeps lambda strictly positive, so
// mu = sqrt(lambda) never vanishes in the group blocks.)
//
// The evolution generator is derived from lambda where needed: the Schrodinger
// group acts mode-wise as exp(i t lambda), the wave group as the rotation
// block [[cos(t mu), sin(t mu)/mu], [-mu sin(t mu), cos(t mu)]].

#include <memory>
#include <vector>

namespace spdelab {

enum class BasisKind { TorusComplex, DirichletSine };
enum class GeneratorKind { Schrodinger, Wave };

struct FrequencyLattice {
  BasisKind basis = BasisKind::TorusComplex;
  GeneratorKind generator = GeneratorKind::Schrodinger;
  int M = 0;                   // number of retained modes
  std::vector<int> modes;      // mode indices in storage order
  std::vector<double> lambda;  // spatial-operator eigenvalue per mode

  [[nodiscard]] int size() const { return M; }

  // Storage position of a mode index; throws std::out_of_range if absent.
  [[nodiscard]] int index_of(int mode) const;
};

// Validates the (basis, generator) pair and M, then fills the mode table.
// Supported pairs: (TorusComplex, Schrodinger), (TorusComplex, Wave),
// (DirichletSine, Wave). Throws std::invalid_argument otherwise, and for
// M < 2 or a torus M that is not a power of two.
[[nodiscard]] FrequencyLattice build_lattice(BasisKind basis, GeneratorKind generator, int M);

[[nodiscard]] std::shared_ptr<const FrequencyLattice>
make_lattice(BasisKind basis, GeneratorKind generator, int M);

}  // namespace spdelab
