#include "spdelab/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace spdelab {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return "nan";
  return {buf, ptr};
}

namespace {

std::string format_row(const ErrorReport& r) {
  std::string line = r.scheme;
  line += ',';
  line += format_double(r.k);
  line += ',';
  line += format_double(r.uniform);
  line += ',';
  line += format_double(r.pointwise);
  line += ',';
  if (r.full_interval) line += format_double(*r.full_interval);
  line += ',';
  line += format_double(r.p);
  line += ',';
  line += std::to_string(r.samples);
  line += ',';
  line += std::to_string(r.seed);
  line += ',';
  line += format_double(r.wall_ms);
  return line;
}

void write_text(const std::filesystem::path& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);  // binary: LF stays LF everywhere
  if (!out) throw std::runtime_error("cannot open for writing: " + file.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + file.string());
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_double(const std::string& s, const std::string& where) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ConfigError({where + ": not a number: '" + s + "'"});
  }
  return v;
}

template <typename T>
T parse_int(const std::string& s, const std::string& where) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ConfigError({where + ": not an integer: '" + s + "'"});
  }
  return v;
}

}  // namespace

std::string csv_text(const std::vector<ErrorReport>& rows) {
  std::string text = kCsvHeader;
  text += '\n';
  for (const auto& r : rows) {
    text += format_row(r);
    text += '\n';
  }
  return text;
}

void write_csv(const std::filesystem::path& file, const std::vector<ErrorReport>& rows) {
  write_text(file, csv_text(rows));
}

std::vector<ErrorReport> read_csv(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError({"cannot open CSV: " + file.string()});
  std::string line;
  if (!std::getline(in, line)) throw ConfigError({file.string() + ": empty file"});
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kCsvHeader) {
    throw ConfigError({file.string() + ": header mismatch (expected '" + kCsvHeader + "')"});
  }
  std::vector<ErrorReport> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = file.string() + ":" + std::to_string(lineno);
    const auto fields = split_csv_line(line);
    if (fields.size() != 9) {
      throw ConfigError({where + ": expected 9 fields, got " + std::to_string(fields.size())});
    }
    ErrorReport r;
    r.scheme = fields[0];
    if (r.scheme.empty()) throw ConfigError({where + ": empty scheme name"});
    r.k = parse_double(fields[1], where + " (k)");
    r.uniform = parse_double(fields[2], where + " (uniform_error)");
    r.pointwise = parse_double(fields[3], where + " (pointwise_error)");
    if (!fields[4].empty()) r.full_interval = parse_double(fields[4], where + " (full_interval_error)");
    r.p = parse_double(fields[5], where + " (p)");
    r.samples = parse_int<int>(fields[6], where + " (samples)");
    r.seed = parse_int<std::uint64_t>(fields[7], where + " (seed)");
    r.wall_ms = parse_double(fields[8], where + " (wall_ms)");
    rows.push_back(std::move(r));
  }
  return rows;
}

namespace {

std::string markdown_error_table(const std::vector<ErrorReport>& rows) {
  std::string md;
  md += "| scheme | k | uniform | pointwise | full interval |\n";
  md += "|---|---|---|---|---|\n";
  for (const auto& r : rows) {
    md += "| " + r.scheme + " | " + format_double(r.k) + " | " + format_double(r.uniform) +
          " | " + format_double(r.pointwise) + " | " +
          (r.full_interval ? format_double(*r.full_interval) : std::string("-")) + " |\n";
  }
  return md;
}

std::string fmt3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

std::string summary_markdown(const ExperimentConfig& config, const RunResult& result) {
  std::string md;
  md += "# Convergence run\n\n";
  md += "- model: " + config.model.kind;
  if (config.model.kind == "wave") md += " (" + config.model.preset + ", " + config.model.basis + ")";
  if (config.model.kind == "schrodinger") md += " (" + config.model.noise_mode + ")";
  md += ", M = " + std::to_string(config.model.M) + "\n";
  md += "- T = " + format_double(config.T) + ", p = " + format_double(config.p) +
        ", sigma = " + format_double(config.sigma) + "\n";
  md += "- samples = " + std::to_string(config.samples) +
        ", seed = " + std::to_string(config.seed) + "\n";
  md += "- reference step = " + format_double(effective_k_ref(config)) + "\n";
  md += "- threads used = " + std::to_string(result.threads_used) +
        " (sample-ordered reduction: output is identical for any thread count)\n";
  md += std::string("- noise amplitudes: ") + kAmplitudeConvention +
        "; coarse/fine coupling: " + kPathCoupling + "\n";
  md += "- wall time: " + fmt3(result.wall_ms_total) +
        " ms for the whole run (repeated on every CSV row)\n\n";

  if (!result.fits.empty()) {
    md += "## Fitted uniform-error rates\n\n";
    md += "| scheme | rate | intercept | residual |\n";
    md += "|---|---|---|---|\n";
    for (const auto& f : result.fits) {
      md += "| " + f.scheme + " | " + fmt3(f.uniform_fit.slope) + " | " +
            fmt3(f.uniform_fit.intercept) + " | " + fmt3(f.uniform_fit.residual) + " |\n";
    }
    md += "\n";
  }

  md += "## Errors\n\n";
  md += markdown_error_table(result.reports);
  return md;
}

void write_summary(const std::filesystem::path& file, const ExperimentConfig& config,
                   const RunResult& result) {
  write_text(file, summary_markdown(config, result));
}

void write_plot_data(const std::filesystem::path& dir, const RunResult& result) {
  std::vector<std::string> schemes;
  for (const auto& r : result.reports) {
    if (std::find(schemes.begin(), schemes.end(), r.scheme) == schemes.end()) {
      schemes.push_back(r.scheme);
    }
  }
  for (const auto& s : schemes) {
    std::string text;
    for (const auto& r : result.reports) {
      if (r.scheme != s) continue;
      text += format_double(r.k);
      text += ' ';
      text += format_double(r.uniform);
      text += '\n';
    }
    write_text(dir / ("plot_" + s + ".dat"), text);
  }
}

Report make_report(const std::filesystem::path& dir) {
  if (!std::filesystem::exists(dir)) {
    throw ConfigError({"report: directory does not exist: " + dir.string()});
  }
  if (!std::filesystem::is_directory(dir)) {
    throw ConfigError({"report: not a directory: " + dir.string()});
  }
  Report rep;
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".csv") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    auto rows = read_csv(f);
    rep.sources.push_back(f.filename().string());
    rep.rows.insert(rep.rows.end(), rows.begin(), rows.end());
  }
  if (files.empty()) {
    rep.warnings.push_back("no CSV files found in " + dir.string() + "; report is empty");
  }

  std::string md = "# Aggregated report\n\n";
  for (const auto& w : rep.warnings) md += "> warning: " + w + "\n\n";
  if (!rep.sources.empty()) {
    md += "Sources:\n";
    for (const auto& s : rep.sources) md += "- " + s + "\n";
    md += "\n";
    md += markdown_error_table(rep.rows);
  }
  rep.markdown = std::move(md);
  return rep;
}

void write_report(const std::filesystem::path& dir, const Report& report) {
  write_text(dir / "report.md", report.markdown);
}

}  // namespace spdelab
