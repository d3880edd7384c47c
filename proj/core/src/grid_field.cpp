#include "wradon/grid_field.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <vector>

namespace wradon {

namespace {

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

}  // namespace

void catmull_rom_weights(double t, double w[4]) {
  const double t2 = t * t;
  const double t3 = t2 * t;
  w[0] = -0.5 * t3 + t2 - 0.5 * t;
  w[1] = 1.5 * t3 - 2.5 * t2 + 1.0;
  w[2] = -1.5 * t3 + 2.0 * t2 + 0.5 * t;
  w[3] = 0.5 * t3 - 0.5 * t2;
}

GridField2D::GridField2D(Eigen::MatrixXd values, double half_extent)
    : values_(std::move(values)), L_(half_extent) {
  const auto n = values_.rows();
  if (n < 4 || values_.cols() != n) {
    throw std::invalid_argument("GridField2D: needs a square grid, n >= 4");
  }
  if (L_ <= 0.0) throw std::invalid_argument("GridField2D: half extent must be positive");
  h_ = 2.0 * L_ / static_cast<double>(n - 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (values_(0, i) != 0.0 || values_(n - 1, i) != 0.0 ||
        values_(i, 0) != 0.0 || values_(i, n - 1) != 0.0) {
      throw std::invalid_argument("GridField2D: boundary ring must be zero");
    }
  }
}

GridField2D GridField2D::sample(const ScalarField& f, double half_extent, int n) {
  if (f.dim() != 2) throw std::invalid_argument("GridField2D::sample: field must be 2D");
  Eigen::MatrixXd values(n, n);
  const double h = 2.0 * half_extent / static_cast<double>(n - 1);
  Vec x(2);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      x[0] = -half_extent + i * h;
      x[1] = -half_extent + j * h;
      values(i, j) = f(x);
    }
  }
  return GridField2D(std::move(values), half_extent);
}

double GridField2D::operator()(double x, double y) const {
  const auto n = values_.rows();
  const double fx = (x + L_) / h_;
  const double fy = (y + L_) / h_;
  const double ix = std::floor(fx);
  const double iy = std::floor(fy);
  if (ix < -2 || ix > static_cast<double>(n) || iy < -2 || iy > static_cast<double>(n)) {
    return 0.0;
  }
  const int i0 = static_cast<int>(ix);
  const int j0 = static_cast<int>(iy);
  double wx[4], wy[4];
  catmull_rom_weights(fx - ix, wx);
  catmull_rom_weights(fy - iy, wy);
  double out = 0.0;
  for (int a = 0; a < 4; ++a) {
    const int i = i0 - 1 + a;
    if (i < 0 || i >= n) continue;
    double row = 0.0;
    for (int b = 0; b < 4; ++b) {
      const int j = j0 - 1 + b;
      if (j < 0 || j >= n) continue;
      row += wy[b] * values_(i, j);
    }
    out += wx[a] * row;
  }
  return out;
}

ScalarField GridField2D::as_field() const {
  GridField2D copy = *this;
  const double radius = std::sqrt(2.0) * L_;
  return ScalarField(2, radius, Smoothness::piecewise,
                     [copy](const Vec& x) { return copy(x[0], x[1]); });
}

void GridField2D::save_csv(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("GridField2D::save_csv: cannot open " + path);
  const auto n = values_.rows();
  out << "L,h,n\n";
  out << format_double(L_) << "," << format_double(h_) << "," << n << "\n";
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j) out << ",";
      out << format_double(values_(i, j));
    }
    out << "\n";
  }
}

GridField2D GridField2D::load_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("GridField2D::load_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != "L,h,n") {
    throw std::runtime_error("GridField2D::load_csv: bad header");
  }
  if (!std::getline(in, line)) throw std::runtime_error("GridField2D::load_csv: truncated");
  std::stringstream hdr(line);
  std::string tok;
  std::getline(hdr, tok, ',');
  const double L = parse_double(tok);
  std::getline(hdr, tok, ',');  // spacing is redundant; recomputed
  std::getline(hdr, tok, ',');
  const int n = static_cast<int>(parse_double(tok));
  Eigen::MatrixXd values(n, n);
  for (int i = 0; i < n; ++i) {
    if (!std::getline(in, line)) throw std::runtime_error("GridField2D::load_csv: truncated");
    std::stringstream row(line);
    for (int j = 0; j < n; ++j) {
      if (!std::getline(row, tok, ',')) {
        throw std::runtime_error("GridField2D::load_csv: short row");
      }
      values(i, j) = parse_double(tok);
    }
  }
  return GridField2D(std::move(values), L);
}

}  // namespace wradon
