#include "spdelab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "spdelab/integrate.hpp"
#include "spdelab/rng.hpp"
#include "spdelab/schemes.hpp"

namespace spdelab {

RateFit fit_rate(std::span<const RatePoint> points) {
  if (points.size() < 3) {
    throw std::invalid_argument("fit_rate: need at least three points");
  }
  for (size_t i = 0; i < points.size(); ++i) {
    if (!(points[i].k > 0.0)) throw std::invalid_argument("fit_rate: k must be positive");
    if (!(points[i].err > 0.0)) {
      throw std::invalid_argument("fit_rate: errors must be strictly positive");
    }
    if (i > 0 && !(points[i].k < points[i - 1].k)) {
      throw std::invalid_argument("fit_rate: k must be strictly decreasing");
    }
  }
  const double n = static_cast<double>(points.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& pt : points) {
    const double x = std::log2(pt.k), y = std::log2(pt.err);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  RateFit fit;
  fit.n = static_cast<int>(points.size());
  const double denom = n * sxx - sx * sx;
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double rss = 0;
  for (const auto& pt : points) {
    const double r = std::log2(pt.err) - (fit.slope * std::log2(pt.k) + fit.intercept);
    rss += r * r;
  }
  fit.residual = std::sqrt(rss / n);
  return fit;
}

double gronwall_continuous_bound(double alpha, double beta, double t) {
  if (alpha < 0 || beta < 0 || t < 0) {
    throw std::invalid_argument("gronwall: nonnegative arguments required");
  }
  const double b2t = beta * beta * t;
  return alpha * std::sqrt(1.0 + b2t) * std::exp(0.5 + 0.5 * b2t);
}

double gronwall_discrete_bound(double alpha, double beta, int j) {
  if (alpha < 0 || beta < 0 || j < 0) {
    throw std::invalid_argument("gronwall: nonnegative arguments required");
  }
  const double b2j = beta * beta * static_cast<double>(j);
  return alpha * std::sqrt(1.0 + b2j) * std::exp(0.5 + 0.5 * b2j);
}

StabilityBound stability_constant(double C_F, double C_G, double T, double p) {
  if (C_F < 0 || C_G < 0 || !(T > 0)) {
    throw std::invalid_argument("stability_constant: bad arguments");
  }
  if (!(p >= 2.0)) throw std::invalid_argument("stability_constant: p must be >= 2");
  StabilityBound b;
  b.B_p = (p == 2.0) ? 2.0 : 4.0 * std::sqrt(p);
  b.C = C_F * std::sqrt(T) + b.B_p * C_G;
  const double c2t = b.C * b.C * T;
  b.value = std::sqrt(1.0 + c2t) * std::exp(0.5 * (1.0 + c2t));
  return b;
}

double maximal_inequality_constant() {
  return 4.0 * std::exp(1.0 + 1.0 / (2.0 * std::exp(1.0)));
}

MaximalProbe maximal_constant_probe(int N, int samples, std::uint64_t seed) {
  if (N < 1 || samples < 1) throw std::invalid_argument("maximal_constant_probe: bad arguments");
  // N scalar Brownian motions (unit integrand, T = 1, n = 256 steps):
  // ratio = max_n sup_j |W_n(t_j)| / (sqrt(max(log N, 1)) * 1). The log factor
  // is floored at 1 so N = 1..2 stays meaningful.
  constexpr int n_steps = 256;
  const double sd = std::sqrt(1.0 / n_steps);
  const double denom = std::sqrt(std::max(std::log(static_cast<double>(N)), 1.0));
  MaximalProbe probe;
  probe.N = N;
  probe.samples = samples;
  double acc = 0.0, worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const std::uint64_t sample_seed = derive_sample_seed(seed, static_cast<std::uint64_t>(s));
    double maxsup = 0.0;
    for (int nidx = 0; nidx < N; ++nidx) {
      NormalStream gen(derive_mode_seed(sample_seed, static_cast<std::uint64_t>(nidx)));
      double w = 0.0, sup = 0.0;
      for (int i = 0; i < n_steps; ++i) {
        w += sd * gen();
        sup = std::max(sup, std::abs(w));
      }
      maxsup = std::max(maxsup, sup);
    }
    const double ratio = maxsup / denom;
    acc += ratio;
    worst = std::max(worst, ratio);
  }
  probe.mean_ratio = acc / samples;
  probe.max_ratio = worst;
  return probe;
}

double theoretical_rate(SchemeKind scheme, ProblemClass problem, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("theoretical_rate: beta must be positive");
  switch (problem) {
    case ProblemClass::Deterministic:
      switch (scheme) {
        case SchemeKind::ExponentialEuler:
          return std::numeric_limits<double>::infinity();  // integrates the group exactly
        case SchemeKind::ImplicitEuler:
          return std::min(beta / 2.0, 1.0);
        case SchemeKind::CrankNicolson:
          return std::min(2.0 * beta / 3.0, 2.0);
        default:
          break;
      }
      break;
    case ProblemClass::Multiplicative:
      switch (scheme) {
        case SchemeKind::ExponentialEuler:
          return std::min(beta, 0.5);
        case SchemeKind::ImplicitEuler:
          return std::min(beta / 2.0, 0.5);
        case SchemeKind::CrankNicolson:
          return std::min(2.0 * beta / 3.0, 0.5);
        default:
          break;
      }
      break;
    case ProblemClass::WaveSmooth:  // beta plays the role of the smoothing index delta
      switch (scheme) {
        case SchemeKind::ImplicitEuler:
          return beta / 2.0;
        case SchemeKind::CrankNicolson:
          return std::min(2.0 * beta / 3.0, 1.0);
        case SchemeKind::ExponentialEuler:
          return std::min(beta, 1.0);
        default:
          break;
      }
      break;
    case ProblemClass::WaveWhite:  // limiting rates as delta -> 1/2
      switch (scheme) {
        case SchemeKind::ExponentialEuler:
          return 0.5;
        case SchemeKind::ImplicitEuler:
          return 0.25;
        case SchemeKind::CrankNicolson:
          return 1.0 / 3.0;
        default:
          break;
      }
      break;
  }
  throw std::invalid_argument("theoretical_rate: no tabulated rate for this combination");
}

double log_modulus(double r, double T, double alpha) {
  if (!(r > 0.0) || !(r <= T)) throw std::invalid_argument("log_modulus: need 0 < r <= T");
  return std::pow(r, alpha) * std::sqrt(1.0 + std::log(T / r));
}

double estimate_log_holder(const Trajectory& traj, double alpha, double sigma) {
  const size_t n = traj.states.size();
  if (n < 2) throw std::invalid_argument("estimate_log_holder: need at least two states");
  const double T = traj.steps.back() * traj.k;
  double best = 0.0;
  for (size_t a = 0; a < n; ++a) {
    for (size_t b = a + 1; b < n; ++b) {
      const double dt = (traj.steps[b] - traj.steps[a]) * traj.k;
      SpectralState diff = traj.states[b];
      add_scaled(diff, traj.states[a], cplx{-1.0, 0.0});
      best = std::max(best, sobolev_norm(diff, sigma) / log_modulus(dt, T, alpha));
    }
  }
  return best;
}

}  // namespace spdelab
