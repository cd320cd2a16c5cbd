// Command line front end.
//
// Exit codes: 0 all requested checks passed (or run completed), 1 a check
// failed, 2 configuration or input error.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "spdelab/config.hpp"
#include "spdelab/experiment.hpp"
#include "spdelab/report.hpp"

namespace {

struct Overrides {
  std::string config_file;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples;
  std::optional<int> threads;
  std::optional<std::string> out;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_file, "JSON experiment configuration")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", o.seed, "override the base seed");
  cmd->add_option("--samples", o.samples, "override the Monte Carlo sample count");
  cmd->add_option("--threads", o.threads, "override worker threads (0 = all cores)");
  cmd->add_option("--out", o.out, "override the output directory");
}

spdelab::ExperimentConfig load(const Overrides& o) {
  spdelab::ExperimentConfig c = spdelab::load_config(o.config_file);
  if (o.seed) c.seed = *o.seed;
  if (o.samples) c.samples = *o.samples;
  if (o.threads) c.threads = *o.threads;
  if (o.out) c.out = *o.out;
  if (auto issues = spdelab::validate_config(c); !issues.empty()) {
    throw spdelab::ConfigError(std::move(issues));
  }
  return c;
}

int cmd_run_convergence(const Overrides& o) {
  const auto config = load(o);
  const auto result = spdelab::run_convergence(config);
  std::printf("wrote %s/results.csv (%zu rows), summary.md, plot data\n", config.out.c_str(),
              result.reports.size());
  for (const auto& f : result.fits) {
    std::printf("  %-18s uniform-error rate %.3f\n", f.scheme.c_str(), f.uniform_fit.slope);
  }
  return 0;
}

int cmd_check_contractivity(const Overrides& o) {
  const auto config = load(o);
  const auto result = spdelab::check_contractivity(config);
  for (const auto& r : result.rows) {
    std::printf("%-18s k=%-12g max|r|=%.12f at mode %d  %s\n", r.scheme.c_str(), r.k,
                r.max_modulus, r.argmax_mode, r.pass ? "PASS" : "FAIL");
  }
  return result.all_pass ? 0 : 1;
}

int cmd_check_order(const Overrides& o, double tolerance) {
  const auto config = load(o);
  const auto result = spdelab::check_order(config, tolerance);
  for (const auto& r : result.rows) {
    if (r.exact) {
      std::printf("%-18s exact (all deterministic errors at roundoff)  %s\n", r.scheme.c_str(),
                  r.pass ? "PASS" : "FAIL");
    } else {
      std::printf("%-18s fitted %.4f expected %.4f (tol %.2f)  %s\n", r.scheme.c_str(), r.fitted,
                  r.expected, tolerance, r.pass ? "PASS" : "FAIL");
    }
  }
  return result.all_pass ? 0 : 1;
}

int cmd_report(const std::string& dir) {
  const auto rep = spdelab::make_report(dir);
  for (const auto& w : rep.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
  spdelab::write_report(dir, rep);
  std::printf("wrote %s/report.md (%zu rows from %zu files)\n", dir.c_str(), rep.rows.size(),
              rep.sources.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pathwise convergence experiments for spectral SPDE discretisations"};
  app.require_subcommand(1);

  Overrides run_o, contr_o, order_o;
  double tolerance = 0.1;
  std::string report_dir;

  auto* run = app.add_subcommand("run-convergence",
                                 "Monte Carlo errors against a fine reference, CSV + summary");
  add_common(run, run_o);

  auto* contr = app.add_subcommand("check-contractivity",
                                   "verify |r(k lambda)| <= 1 on the model's spectrum");
  add_common(contr, contr_o);

  auto* order = app.add_subcommand("check-order", "deterministic empirical orders vs theory");
  add_common(order, order_o);
  order->add_option("--tolerance", tolerance, "allowed |fitted - expected| gap")
      ->check(CLI::PositiveNumber);

  auto* report = app.add_subcommand("report", "aggregate CSV results in a directory");
  report->add_option("dir", report_dir, "directory containing results CSVs")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (run->parsed()) return cmd_run_convergence(run_o);
    if (contr->parsed()) return cmd_check_contractivity(contr_o);
    if (order->parsed()) return cmd_check_order(order_o, tolerance);
    return cmd_report(report_dir);
  } catch (const spdelab::ConfigError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
