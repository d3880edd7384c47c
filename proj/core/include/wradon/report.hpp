#pragma once

#include <string>
#include <vector>

namespace wradon {

/// One verified sample: a hyperplane or line (s, theta), the residual value,
/// and which evaluation path produced it.
struct ResidualRecord {
  double s = 0.0;
  std::vector<double> theta;
  double value = 0.0;
  std::string path;
};

/// Residual study summary. max/mean are over |value|; `normalization` is the
/// reference magnitude the residuals are measured against (reports store raw
/// values; normalized = value / normalization).
struct ResidualReport {
  std::string kind;
  std::vector<ResidualRecord> records;
  double normalization = 1.0;
  double weight_min = 0.0;
  double weight_max = 0.0;
  double wall_seconds = 0.0;

  double max_abs() const;
  double mean_abs() const;
  double normalized_max() const { return max_abs() / normalization; }

  /// CSV: "s,theta_0,...,theta_{d-1},value,path" rows, shortest round-trip
  /// number formatting. Loading recomputes the summary from the records.
  void save_csv(const std::string& path) const;
  static ResidualReport load_csv(const std::string& path);

  /// JSON summary (does not include per-record data).
  std::string summary_json() const;
};

/// Shortest round-trip decimal formatting (std::to_chars); used everywhere a
/// double is written to CSV or JSON so that identical runs produce identical
/// bytes and reloading is bit-exact.
std::string format_double(double v);
double parse_double(const std::string& s);

}  // namespace wradon
