#pragma once
//
// Rate fitting, a-priori bound helpers, and the theoretical-rate table.
//
// gronwall_continuous_bound: if phi is nonnegative, bounded, and satisfies
//   phi(t) <= alpha + beta (int_0^t phi(s)^2 ds)^{1/2}   for t in [0, T],
// then phi(t) <= alpha (1 + beta^2 t)^{1/2} exp(1/2 + beta^2 t / 2).
//
// gronwall_discrete_bound: if phi_j <= alpha + beta (sum_{i<j} phi_i^2)^{1/2}
// then phi_j <= alpha (1 + beta^2 j)^{1/2} exp(1/2 + beta^2 j / 2).
//
// stability_constant(C_F, C_G, T, p): with B_2 = 2 and B_p = 4 sqrt(p) for
// p > 2, set C = C_F sqrt(T) + B_p C_G; the returned stability factor is
// (1 + C^2 T)^{1/2} exp((1 + C^2 T)/2).
//
// maximal_inequality_constant: 4 exp(1 + 1/(2e)) ~= 13.07, the universal
// factor in E max_{n<=N} sup_t |int g_n dW| <= K sqrt(log N) max_n ||g_n||;
// maximal_constant_probe draws that maximum over N independent scalar
// Brownian integrals and reports the observed ratio (a Monte Carlo sanity
// check that the constant is generous, not a proof).

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace spdelab {

enum class SchemeKind;  // schemes.hpp
struct Trajectory;      // integrate.hpp

struct RatePoint {
  double k = 0;
  double err = 0;
};

struct RateFit {
  double slope = 0;
  double intercept = 0;  // log2(err) ~= slope * log2(k) + intercept
  double residual = 0;   // rms residual in log2 space
  int n = 0;
};

struct OrderFit {
  bool exact = false;  // every error below 1e-12; fit is meaningless then
  RateFit fit;
};

// Least-squares slope of log2(err) against log2(k). Requires at least three
// points, strictly decreasing k, and strictly positive errors.
[[nodiscard]] RateFit fit_rate(std::span<const RatePoint> points);

[[nodiscard]] double gronwall_continuous_bound(double alpha, double beta, double t);
[[nodiscard]] double gronwall_discrete_bound(double alpha, double beta, int j);

struct StabilityBound {
  double B_p = 0;
  double C = 0;      // C_F sqrt(T) + B_p C_G
  double value = 0;  // (1 + C^2 T)^{1/2} exp((1 + C^2 T)/2)
};
[[nodiscard]] StabilityBound stability_constant(double C_F, double C_G, double T, double p);

[[nodiscard]] double maximal_inequality_constant();

struct MaximalProbe {
  int N = 0;
  int samples = 0;
  double mean_ratio = 0;
  double max_ratio = 0;
};
[[nodiscard]] MaximalProbe maximal_constant_probe(int N, int samples, std::uint64_t seed);

// Problem classes with known convergence rates on D((-A)^beta)-type data.
// beta is the operator-scale smoothness exponent (WaveSmooth passes delta).
enum class ProblemClass { Deterministic, Multiplicative, WaveSmooth, WaveWhite };

// Known-rate table; throws std::invalid_argument for combinations without a
// tabulated rate. Deterministic exponential Euler integrates the linear part
// exactly and reports +infinity.
[[nodiscard]] double theoretical_rate(SchemeKind scheme, ProblemClass problem, double beta);

// Psi(r) = r^alpha (1 + log(T/r))^{1/2} on 0 < r <= T.
[[nodiscard]] double log_modulus(double r, double T, double alpha);

// max over recorded grid pairs s < t of ||u(t) - u(s)||_sigma / Psi(t - s).
[[nodiscard]] double estimate_log_holder(const Trajectory& traj, double alpha,
                                         double sigma = 0.0);

}  // namespace spdelab
