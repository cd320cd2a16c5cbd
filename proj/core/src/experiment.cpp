#include "spdelab/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <mutex>
#include <thread>

#include "spdelab/integrate.hpp"
#include "spdelab/models.hpp"
#include "spdelab/noise.hpp"
#include "spdelab/report.hpp"
#include "spdelab/rng.hpp"
#include "spdelab/state.hpp"

namespace spdelab {

namespace {

// Per-sample statistics for one (scheme, k) pair.
struct PairStats {
  std::vector<double> coarse;  // ||U_ref(t_j) - U^j||_sigma at coarse node j
  double full_max = 0.0;       // max over the fine grid vs piecewise constant U
};

int resolve_threads(const ExperimentConfig& config) {
  int t = config.threads > 0 ? config.threads
                             : static_cast<int>(std::thread::hardware_concurrency());
  if (t < 1) t = 1;
  return std::min(t, config.samples);
}

}  // namespace

RunResult compute_errors(const ExperimentConfig& config) {
  const auto t_start = std::chrono::steady_clock::now();
  const Model model = build_model(config);
  auto lattice = model_lattice_ptr(model);
  const auto schemes = build_schemes(config);
  const double T = config.T;
  const double k_ref = effective_k_ref(config);
  const auto ks = effective_k(config);
  const int n_fine = static_cast<int>(std::lround(T / k_ref));
  const CovarianceSpec cov = model_covariance(model);
  const SpectralState u0 = model_initial_state(model);

  std::vector<int> factor(ks.size());
  for (std::size_t i = 0; i < ks.size(); ++i) {
    factor[i] = static_cast<int>(std::lround(ks[i] / k_ref));
  }

  // Propagators are built once and shared read-only across workers.
  std::vector<std::vector<DiagonalPropagator>> R(schemes.size());
  for (std::size_t s = 0; s < schemes.size(); ++s) {
    for (double k : ks) R[s].push_back(discrete_propagator(schemes[s], *lattice, k));
  }
  const DiagonalPropagator R_ref = semigroup_propagator(*lattice, k_ref);

  const std::size_t n_pairs = schemes.size() * ks.size();
  std::vector<std::vector<PairStats>> slots(config.samples);

  std::filesystem::path paths_dir;
  std::mutex dump_mutex;
  if (config.dump_paths) {
    paths_dir = std::filesystem::path(config.out) / "paths";
    std::filesystem::create_directories(paths_dir);
  }

  auto run_sample = [&](int s) {
    IncrementGrid fine;
    std::vector<IncrementGrid> grids;
    grids.reserve(ks.size());
    {
      const WienerPath path =
          sample_path(derive_sample_seed(config.seed, static_cast<std::uint64_t>(s)), cov,
                      lattice, n_fine, T);
      if (config.dump_paths) {
        char name[32];
        std::snprintf(name, sizeof name, "sample_%05d.bin", s);
        const std::scoped_lock lk(dump_mutex);
        dump_path(path, paths_dir / name);
      }
      fine = coarsen(path, 1);
      for (int f : factor) grids.push_back(coarsen(path, f));
    }

    std::vector<SpectralState> cur(n_pairs, u0);
    std::vector<PairStats> stats(n_pairs);
    {
      std::size_t pr = 0;
      for (std::size_t is = 0; is < schemes.size(); ++is) {
        for (std::size_t ik = 0; ik < ks.size(); ++ik, ++pr) {
          stats[pr].coarse.assign(static_cast<std::size_t>(n_fine / factor[ik]) + 1, 0.0);
        }
      }
    }

    SpectralState ref = u0;
    for (int f = 1; f <= n_fine; ++f) {
      ref = step(model, R_ref, ref, (f - 1) * k_ref, k_ref, fine.step(f - 1));
      std::size_t pr = 0;
      for (std::size_t is = 0; is < schemes.size(); ++is) {
        for (std::size_t ik = 0; ik < ks.size(); ++ik, ++pr) {
          const int phi = factor[ik];
          if (f % phi == 0) {
            const int j = f / phi;
            cur[pr] =
                step(model, R[is][ik], cur[pr], (j - 1) * ks[ik], ks[ik], grids[ik].step(j - 1));
            const double d = sobolev_distance(ref, cur[pr], config.sigma);
            stats[pr].coarse[j] = d;
            if (d > stats[pr].full_max) stats[pr].full_max = d;
          } else if (config.full_interval) {
            const double d = sobolev_distance(ref, cur[pr], config.sigma);
            if (d > stats[pr].full_max) stats[pr].full_max = d;
          }
        }
      }
    }
    slots[s] = std::move(stats);
  };

  const int threads = resolve_threads(config);
  if (threads == 1) {
    for (int s = 0; s < config.samples; ++s) run_sample(s);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (;;) {
            const int s = next.fetch_add(1);
            if (s >= config.samples) return;
            run_sample(s);
          }
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  // Reduce in ascending sample order: the summation order is fixed by this
  // loop, not by the scheduling above, so any thread count gives identical
  // bytes.
  RunResult out;
  out.threads_used = threads;
  const double p = config.p;
  std::size_t pr = 0;
  for (std::size_t is = 0; is < schemes.size(); ++is) {
    for (std::size_t ik = 0; ik < ks.size(); ++ik, ++pr) {
      const int n_coarse = n_fine / factor[ik];
      double acc_uniform = 0.0, acc_full = 0.0;
      std::vector<double> acc_point(static_cast<std::size_t>(n_coarse) + 1, 0.0);
      for (int s = 0; s < config.samples; ++s) {
        const PairStats& st = slots[s][pr];
        double worst = 0.0;
        for (int j = 0; j <= n_coarse; ++j) {
          worst = std::max(worst, st.coarse[j]);
          acc_point[j] += std::pow(st.coarse[j], p);
        }
        acc_uniform += std::pow(worst, p);
        acc_full += std::pow(st.full_max, p);
      }
      ErrorReport r;
      r.scheme = schemes[is].label;
      r.k = ks[ik];
      r.uniform = std::pow(acc_uniform / config.samples, 1.0 / p);
      double worst_point = 0.0;
      for (double a : acc_point) worst_point = std::max(worst_point, a);
      r.pointwise = std::pow(worst_point / config.samples, 1.0 / p);
      if (config.full_interval) r.full_interval = std::pow(acc_full / config.samples, 1.0 / p);
      r.p = p;
      r.samples = config.samples;
      r.seed = config.seed;
      out.reports.push_back(std::move(r));
    }
  }

  if (ks.size() >= 3) {
    for (std::size_t is = 0; is < schemes.size(); ++is) {
      std::vector<RatePoint> pts;
      bool usable = true;
      for (std::size_t ik = 0; ik < ks.size(); ++ik) {
        const ErrorReport& r = out.reports[is * ks.size() + ik];
        if (!(r.uniform > 0.0)) {
          usable = false;  // exact runs (k == k_ref) have nothing to fit
          break;
        }
        pts.push_back({r.k, r.uniform});
      }
      if (usable) out.fits.push_back({schemes[is].label, fit_rate(pts)});
    }
  }

  const auto t_end = std::chrono::steady_clock::now();
  out.wall_ms_total = std::chrono::duration<double, std::milli>(t_end - t_start).count();
  for (auto& r : out.reports) r.wall_ms = out.wall_ms_total;
  return out;
}

RunResult run_convergence(const ExperimentConfig& config) {
  RunResult result = compute_errors(config);
  const std::filesystem::path out(config.out);
  std::filesystem::create_directories(out);
  write_csv(out / "results.csv", result.reports);
  write_summary(out / "summary.md", config, result);
  write_plot_data(out, result);
  return result;
}

ContractivityResult check_contractivity(const ExperimentConfig& config) {
  const Model model = build_model(config);
  const FrequencyLattice& lat = model_lattice(model);
  const auto schemes = build_schemes(config);
  const auto ks = effective_k(config);
  ContractivityResult out;
  out.all_pass = true;
  for (const auto& s : schemes) {
    for (double k : ks) {
      out.rows.push_back(check_contractive(s, lat, k));
      if (!out.rows.back().pass) out.all_pass = false;
    }
  }
  return out;
}

namespace {

// Largest beta with data in D((-A)^beta), read off the coefficient decay.
// Profiles with finitely many modes lie on the whole scale.
double data_regularity(const ExperimentConfig& c) {
  const auto& m = c.model;
  const double inf = std::numeric_limits<double>::infinity();
  auto beta_of = [&](const ExperimentConfig::Field& f, bool velocity) -> double {
    if (f.kind == "zero" || f.kind == "single_mode") return inf;
    const double a = f.exponent;  // |c_mode| ~ |mode|^-a
    if (m.kind == "schrodinger") {
      // sum lambda^{2 beta} |c|^2 ~ sum mode^{4 beta - 2a} finite iff beta < (2a-1)/4
      return (2.0 * a - 1.0) / 4.0;
    }
    // pair scale: sum lambda^beta |u|^2 needs beta < a - 1/2,
    //             sum lambda^{beta-1} |v|^2 needs beta < a + 1/2
    return velocity ? a + 0.5 : a - 0.5;
  };
  if (m.kind == "schrodinger") return beta_of(m.u0, false);
  return std::min(beta_of(m.u0, false), beta_of(m.v0, true));
}

}  // namespace

OrderCheckResult check_order(const ExperimentConfig& config, double tolerance) {
  const Model model = build_model(config);
  auto lattice = model_lattice_ptr(model);
  const SpectralState u0 = model_initial_state(model);
  if (sobolev_norm(u0, 0.0) == 0.0) {
    throw ConfigError({"$.model.u0: check-order needs non-zero initial data"});
  }
  const auto ks = effective_k(config);
  if (ks.size() < 3) {
    throw ConfigError({"$.k: check-order needs at least three step sizes to fit a rate"});
  }
  const double beta = data_regularity(config);

  OrderCheckResult out;
  out.all_pass = true;
  for (const auto& s : build_schemes(config)) {
    if (s.kind == SchemeKind::CustomRational) {
      throw ConfigError(
          {"$.schemes: check-order has no reference order for custom scheme '" + s.label + "'"});
    }
    const OrderFit fit = empirical_order(s, *lattice, u0, config.T, ks);
    OrderCheckRow row;
    row.scheme = s.label;
    row.exact = fit.exact;
    const double expected = theoretical_rate(s.kind, ProblemClass::Deterministic, beta);
    row.expect_exact = !std::isfinite(expected);
    row.expected = row.expect_exact ? 0.0 : expected;
    if (fit.exact) {
      // Zero error is stronger than any finite order.
      row.fitted = 0.0;
      row.pass = true;
    } else {
      row.fitted = fit.fit.slope;
      row.pass = !row.expect_exact && std::abs(row.fitted - row.expected) <= tolerance;
    }
    if (!row.pass) out.all_pass = false;
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace spdelab
