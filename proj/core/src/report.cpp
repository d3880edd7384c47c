#include "wradon/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

namespace wradon {

std::string format_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  if (res.ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc()) throw std::runtime_error("parse_double: '" + s + "'");
  return v;
}

double ResidualReport::max_abs() const {
  double m = 0.0;
  for (const auto& r : records) m = std::max(m, std::abs(r.value));
  return m;
}

double ResidualReport::mean_abs() const {
  if (records.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& r : records) sum += std::abs(r.value);
  return sum / static_cast<double>(records.size());
}

void ResidualReport::save_csv(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("ResidualReport::save_csv: cannot open " + path);
  const std::size_t d = records.empty() ? 0 : records.front().theta.size();
  out << "s";
  for (std::size_t i = 0; i < d; ++i) out << ",theta_" << i;
  out << ",value,path\n";
  for (const auto& r : records) {
    out << format_double(r.s);
    for (double t : r.theta) out << "," << format_double(t);
    out << "," << format_double(r.value) << "," << r.path << "\n";
  }
}

ResidualReport ResidualReport::load_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("ResidualReport::load_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("ResidualReport::load_csv: empty");
  std::size_t columns = 1;
  for (char c : line) columns += (c == ',');
  if (columns < 3) throw std::runtime_error("ResidualReport::load_csv: bad header");
  const std::size_t d = columns - 3;
  ResidualReport report;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string tok;
    ResidualRecord rec;
    std::getline(row, tok, ',');
    rec.s = parse_double(tok);
    rec.theta.resize(d);
    for (std::size_t i = 0; i < d; ++i) {
      std::getline(row, tok, ',');
      rec.theta[i] = parse_double(tok);
    }
    std::getline(row, tok, ',');
    rec.value = parse_double(tok);
    std::getline(row, rec.path, ',');
    report.records.push_back(std::move(rec));
  }
  return report;
}

std::string ResidualReport::summary_json() const {
  nlohmann::json j;
  j["kind"] = kind;
  j["records"] = records.size();
  j["max_abs"] = format_double(max_abs());
  j["mean_abs"] = format_double(mean_abs());
  j["normalization"] = format_double(normalization);
  j["normalized_max"] = format_double(normalized_max());
  j["weight_min"] = format_double(weight_min);
  j["weight_max"] = format_double(weight_max);
  j["wall_seconds"] = wall_seconds;
  return j.dump(2);
}

}  // namespace wradon
