#pragma once

#include <memory>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "wradon/report.hpp"
#include "wradon/transforms.hpp"

namespace wradon {

/// Canonical line coordinates: s signed offset, phi in [0, pi) the angle of
/// the unit normal. Both orientations of a line map to the same (s, phi).
struct LineCoords {
  double s = 0.0;
  double phi = 0.0;
};

LineCoords line_coordinates(const Eigen::Vector2d& point,
                            const Eigen::Vector2d& direction);

/// Finite family of 2D lines: uniform angles phi_j = j pi / n_phi, uniform
/// symmetric offsets in [-radius, radius], one shared quadrature rule.
struct LineFamily2D {
  std::vector<double> angles;
  std::vector<double> offsets;
  double radius = 1.0;
  LineRule rule;

  static LineFamily2D uniform(int n_phi, int n_s, double radius, int line_nodes);

  int n_phi() const { return static_cast<int>(angles.size()); }
  int n_s() const { return static_cast<int>(offsets.size()); }
};

/// 2D weight/function pair with discrete-exact annihilation on the family:
/// w0(x, theta) = rescale * (1 - lambda(line(x, theta)) * f0(x)), where
/// lambda = (sum w f0) / (sum w f0^2) on each family line and is interpolated
/// bicubically in (s, phi) off the family (phi axis periodic with s flip).
class NullPair2D {
 public:
  double eval_w0(const Eigen::Vector2d& x, const Eigen::Vector2d& direction) const;

  /// Interpolated lambda; (s, phi) need not be canonical.
  double lambda_at(double s, double phi) const;

  const ScalarField& f0() const { return f0_; }
  const LineFamily2D& family() const { return family_; }
  const Eigen::MatrixXd& lambda_table() const { return lambda_; }
  double rescale_factor() const { return rescale_; }
  double weight_min() const { return w_min_; }
  double weight_max() const { return w_max_; }
  double sup_lambda_f0() const { return sup_lambda_f0_; }
  double h_floor() const { return h_floor_; }

  /// JSON header (family geometry, rescale, realized bounds) + CSV lambda
  /// table. Reload with the same f0 is bit-exact.
  void save(const std::string& json_path, const std::string& csv_path) const;
  static NullPair2D load(const ScalarField& f0, const std::string& json_path,
                         const std::string& csv_path);

  friend NullPair2D build_null_pair_2d(const ScalarField& f0,
                                       const LineFamily2D& family);

 private:
  NullPair2D(ScalarField f0, LineFamily2D family)
      : f0_(std::move(f0)), family_(std::move(family)) {}

  ScalarField f0_;
  LineFamily2D family_;
  Eigen::MatrixXd lambda_;  // n_phi x n_s
  double rescale_ = 1.0;
  double w_min_ = 1.0;
  double w_max_ = 1.0;
  double sup_lambda_f0_ = 0.0;
  double h_floor_ = 0.0;
};

/// Builds the pair. Throws WeightBoundViolation if sup |lambda f0| over the
/// family nodes exceeds 2/3 (no strictly positive weight of this form exists
/// then), DegenerateF0Error if every line is below the energy floor.
NullPair2D build_null_pair_2d(const ScalarField& f0, const LineFamily2D& family);

/// The d-dimensional pair: w(x, a) = w0((x1,x2), (a1,a2)/|(a1,a2)|),
/// f = psi(x3..x_d) f0(x1,x2), W = w composed with alpha(theta) and extended
/// to the degenerate set by W(x, theta) = w0((x1,x2), e1).
struct LiftedPair {
  int dim = 3;
  std::shared_ptr<const NullPair2D> base;
  RayWeight w;
  RadonWeight W;
  ScalarField f;
};

LiftedPair lift_to_dimension(std::shared_ptr<const NullPair2D> pair, int d);

/// Family residuals (per-line normalized) plus seeded off-family residuals
/// (raw, with report.normalization = max line mass of |f0|).
ResidualReport verify_null_pair_2d(const NullPair2D& pair, int offgrid_lines,
                                   std::uint64_t seed = 1);

enum class VerifyMode { reduction, direct };

struct LiftedVerifyOptions {
  int fiber_nodes = 64;
  // 0 = reuse the pair's family rule for the inner ray quadrature (the rays
  // of the decomposition are 2D lines, where that rule is the one the
  // annihilation was built on).
  int line_nodes = 0;
  int direct_nodes_per_axis = 64;
  std::uint64_t frame_seed = 0;
};

/// Evaluates R_W f over the given hyperplanes through the ray decomposition
/// (reduction) or by direct hyperplane quadrature. Degenerate normals are
/// evaluated in direct mode only (the decomposition needs alpha(theta)).
/// report.normalization is max |R_1 |f|| over the same grid and mode.
ResidualReport verify_lifted_pair(const LiftedPair& lp,
                                  const std::vector<Hyperplane>& planes,
                                  VerifyMode mode,
                                  const LiftedVerifyOptions& options = {});

}  // namespace wradon
