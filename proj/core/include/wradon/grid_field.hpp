#pragma once

#include <string>

#include <Eigen/Core>

#include "wradon/fields.hpp"

namespace wradon {

/// Uniform n x n grid of values over [-L, L]^2 with bicubic (Catmull-Rom)
/// interpolation. The boundary ring must be identically zero so the
/// interpolated field has compact support; values outside the grid read as 0.
class GridField2D {
 public:
  GridField2D(Eigen::MatrixXd values, double half_extent);

  /// Samples a field at the grid nodes. The field's support must fit inside
  /// the square so the boundary ring is zero.
  static GridField2D sample(const ScalarField& f, double half_extent, int n);

  double operator()(double x, double y) const;

  double half_extent() const { return L_; }
  double spacing() const { return h_; }
  int size() const { return static_cast<int>(values_.rows()); }
  const Eigen::MatrixXd& values() const { return values_; }

  /// View as a ScalarField (support radius sqrt(2) * L, the square's
  /// circumscribed ball).
  ScalarField as_field() const;

  /// CSV with header line "L,h,n" followed by n rows of n values
  /// (row-major, shortest round-trip formatting; bit-exact reload).
  void save_csv(const std::string& path) const;
  static GridField2D load_csv(const std::string& path);

 private:
  Eigen::MatrixXd values_;
  double L_;
  double h_;
};

/// Catmull-Rom weights for fractional offset t in [0, 1): the interpolant
/// reproduces node values exactly and constants everywhere in the interior.
void catmull_rom_weights(double t, double w[4]);

}  // namespace wradon
