#pragma once
//
// One-step time discretisation schemes, described by their rational symbol
// r(z) (approximating exp(z)) with real coefficients in ascending powers:
//
//   exponential Euler : r(z) = exp(z)        (the group itself, no rational form)
//   implicit Euler    : r(z) = 1 / (1 - z)
//   Crank-Nicolson    : r(z) = (2 + z) / (2 - z)
//   custom rational   : user-supplied num/den coefficient lists
//
// Consistency r(0) = 1 is enforced for every kind. A scheme is contractive on
// a lattice when |r| <= 1 at every realised generator eigenvalue -- for the
// Schrodinger lattice the points i k lambda, for the wave lattice +- i k mu.
// check_contractive certifies exactly that (the realised spectrum, nothing
// more) and reports the worst mode.
//
// discrete_propagator(r, lattice, k) builds the mode-diagonal one-step map
// r(k A). Schrodinger modes take the scalar r(i k lambda). Wave modes take
// the 2x2 block r(k A_lambda) with A_lambda = [[0, 1], [-lambda, 0]]: since
// A_lambda^2 = -lambda I, every real polynomial in k A_lambda reduces to a
// pair (a, b) ~ a I + b A_lambda with the multiplication rule
// (a1,b1)(a2,b2) = (a1 a2 - b1 b2 lambda, a1 b2 + a2 b1); the numerator and
// denominator are evaluated by Horner in that algebra and divided by one
// exact 2x2 solve. A vanishing denominator raises an error naming the mode.

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "spdelab/analysis.hpp"
#include "spdelab/lattice.hpp"
#include "spdelab/propagator.hpp"
#include "spdelab/state.hpp"

namespace spdelab {

enum class SchemeKind { ExponentialEuler, ImplicitEuler, CrankNicolson, CustomRational };

struct SchemeSpec {
  SchemeKind kind = SchemeKind::ExponentialEuler;
  std::vector<double> num, den;  // ascending powers; unused for exponential Euler
  std::string label;

  static SchemeSpec exponential_euler();
  static SchemeSpec implicit_euler();
  static SchemeSpec crank_nicolson();

  // Validates r(0) = 1 and samples |den| over the closed left half-plane
  // (a finite grid including the imaginary axis -- a heuristic guard, not a
  // proof; discrete_propagator still checks the realised modes exactly).
  static SchemeSpec rational(std::vector<double> num, std::vector<double> den,
                             std::string label = "custom");
};

[[nodiscard]] std::complex<double> scheme_symbol(const SchemeSpec& s, std::complex<double> z);

[[nodiscard]] DiagonalPropagator discrete_propagator(const SchemeSpec& s,
                                                     const FrequencyLattice& lat, double k);

struct ContractivityReport {
  std::string scheme;
  double k = 0;
  double max_modulus = 0;
  int argmax_mode = 0;          // lattice mode index attaining the max
  bool pass = false;            // max_modulus <= 1 + 1e-12
  std::vector<double> modulus;  // per mode, storage order
};

[[nodiscard]] ContractivityReport check_contractive(const SchemeSpec& s,
                                                    const FrequencyLattice& lat, double k);

// Deterministic convergence order on the linear problem with initial data u0:
// for each k the exact flow and the scheme recursion are advanced mode-wise
// over n = T/k steps and the largest X-norm gap along the grid is recorded;
// the (k, err) points are fitted in log2-log2. If every error is below 1e-12
// the scheme is reported as exact and no fit is attempted.
[[nodiscard]] OrderFit empirical_order(const SchemeSpec& s, const FrequencyLattice& lat,
                                       const SpectralState& u0, double T,
                                       std::span<const double> k_grid);

}  // namespace spdelab
