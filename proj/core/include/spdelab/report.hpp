#pragma once
//
// Wire formats. results.csv is UTF-8 with LF line endings and the header
//
//   scheme,k,uniform_error,pointwise_error,full_interval_error,p,samples,seed,wall_ms
//
// Floating point fields use shortest round-trip decimal formatting; a run
// without the full-interval functional leaves that field empty. Plot files
// are whitespace separated, one "k error" pair per line. make_report
// aggregates every *.csv under a directory; a directory with no CSV files
// yields an empty report with a warning, a malformed CSV is an input error
// (ConfigError).

#include <filesystem>
#include <string>
#include <vector>

#include "spdelab/experiment.hpp"

namespace spdelab {

inline constexpr const char* kCsvHeader =
    "scheme,k,uniform_error,pointwise_error,full_interval_error,p,samples,seed,wall_ms";

// Shortest decimal string that parses back to exactly the same double.
[[nodiscard]] std::string format_double(double v);

[[nodiscard]] std::string csv_text(const std::vector<ErrorReport>& rows);
void write_csv(const std::filesystem::path& file, const std::vector<ErrorReport>& rows);
[[nodiscard]] std::vector<ErrorReport> read_csv(const std::filesystem::path& file);

[[nodiscard]] std::string summary_markdown(const ExperimentConfig& config,
                                           const RunResult& result);
void write_summary(const std::filesystem::path& file, const ExperimentConfig& config,
                   const RunResult& result);

// One plot_<scheme>.dat per scheme with (k, uniform_error) pairs.
void write_plot_data(const std::filesystem::path& dir, const RunResult& result);

struct Report {
  std::vector<ErrorReport> rows;
  std::vector<std::string> sources;  // CSV files aggregated, sorted
  std::vector<std::string> warnings;
  std::string markdown;
};

[[nodiscard]] Report make_report(const std::filesystem::path& dir);
void write_report(const std::filesystem::path& dir, const Report& report);  // report.md

}  // namespace spdelab
