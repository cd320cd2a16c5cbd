#pragma once
//
// Monte Carlo convergence experiments.
//
// compute_errors runs, per sample, one fine reference trajectory and one
// coarse trajectory per (scheme, k) pair, all driven by the same Wiener path
// (coarse increments are sums of the fine ones). The three error functionals
// accumulate in a single sweep over the fine grid:
//
//   uniform       = ( E max_j ||U_ref(t_j) - U^j||^p )^{1/p}      (coarse grid)
//   pointwise     = max_j ( E ||U_ref(t_j) - U^j||^p )^{1/p}
//   full_interval = same as uniform but the maximum runs over every fine time,
//                   comparing against the piecewise constant extension of U^j.
//
// Per-sample statistics land in preallocated slots indexed by sample and are
// reduced in ascending sample order after all workers join, so results are
// byte-identical for any thread count.  Wall time is measured for the whole
// computation and repeated on every row of the report.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spdelab/analysis.hpp"
#include "spdelab/config.hpp"
#include "spdelab/schemes.hpp"

namespace spdelab {

// Conventions recorded in summaries so numbers can be reproduced elsewhere:
// noise amplitudes multiply basis functions with real standard normals, and
// coarse increments are left-to-right sums of fine ones.
inline constexpr const char* kAmplitudeConvention = "real";
inline constexpr const char* kPathCoupling = "increment-summation";

struct ErrorReport {
  std::string scheme;
  double k = 0.0;
  double uniform = 0.0;
  double pointwise = 0.0;
  std::optional<double> full_interval;
  double p = 2.0;
  int samples = 0;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;
};

struct SchemeRates {
  std::string scheme;
  RateFit uniform_fit;  // slope of log2(uniform error) against log2(k)
};

struct RunResult {
  std::vector<ErrorReport> reports;  // scheme-major, k in config order
  std::vector<SchemeRates> fits;     // present when >= 3 step sizes
  int threads_used = 1;
  double wall_ms_total = 0.0;
};

// Pure computation (except optional raw path dumps, which stream to
// <out>/paths/ during the run because buffering them is impractical).
[[nodiscard]] RunResult compute_errors(const ExperimentConfig& config);

// compute_errors + results.csv, summary.md and plot_<scheme>.dat in config.out.
RunResult run_convergence(const ExperimentConfig& config);

struct ContractivityResult {
  std::vector<ContractivityReport> rows;  // scheme-major, k in config order
  bool all_pass = false;
};
[[nodiscard]] ContractivityResult check_contractivity(const ExperimentConfig& config);

struct OrderCheckRow {
  std::string scheme;
  bool exact = false;     // every deterministic error below the exactness floor
  double fitted = 0.0;    // least-squares slope (0 when exact)
  double expected = 0.0;  // from the data regularity (0 when exact expected)
  bool expect_exact = false;
  bool pass = false;
};
struct OrderCheckResult {
  std::vector<OrderCheckRow> rows;
  bool all_pass = false;
};
// Deterministic part only (noise and drift switched off); fitted order must
// match the theoretical one within `tolerance`.
[[nodiscard]] OrderCheckResult check_order(const ExperimentConfig& config, double tolerance = 0.1);

}  // namespace spdelab
