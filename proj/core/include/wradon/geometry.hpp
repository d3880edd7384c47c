#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "wradon/errors.hpp"

namespace wradon {

using Vec = Eigen::VectorXd;

inline constexpr double kDegeneracyTol = 1e-9;
inline constexpr double kUnitNormTol = 1e-12;

/// Unit vector in R^d, d >= 2. Norm is validated at construction.
class Direction {
 public:
  explicit Direction(Vec components);

  /// Normalizes first; throws if the input is (near) zero.
  static Direction normalized(Vec components);

  int dim() const { return static_cast<int>(v_.size()); }
  double operator[](int i) const { return v_[i]; }
  const Vec& vec() const { return v_; }

  Direction operator-() const;

 private:
  Vec v_;
};

/// Standard basis vector e_i (0-based index) in R^d.
Direction basis_direction(int dim, int index);

/// The hyperplane {x : x . theta = s}. (s, theta) and (-s, -theta) denote the
/// same point set; no canonicalization is applied.
struct Hyperplane {
  double offset = 0.0;
  Direction normal;

  Hyperplane(double s, Direction theta) : offset(s), normal(std::move(theta)) {}
  int dim() const { return normal.dim(); }
};

/// Oriented line in R^d represented by its foot of perpendicular:
/// base . direction = 0 (validated within 1e-10).
class Ray {
 public:
  Ray(Vec base, Direction direction);

  const Vec& base() const { return base_; }
  const Direction& direction() const { return dir_; }
  int dim() const { return dir_.dim(); }

  Vec point_at(double t) const { return base_ + t * dir_.vec(); }

 private:
  Vec base_;
  Direction dir_;
};

/// Orthonormal basis (alpha, beta_1, ..., beta_{d-2}) spanning the hyperplane
/// with normal theta.
struct Frame {
  Direction alpha;
  std::vector<Direction> betas;

  int dim() const { return alpha.dim(); }
  int tangent_count() const { return 1 + static_cast<int>(betas.size()); }
  const Direction& tangent(int i) const { return i == 0 ? alpha : betas[i - 1]; }
};

enum class IntersectionKind { Line, Plane, Empty };

/// True iff theta is orthogonal to both e1 and e2 within tol. Requires d >= 3.
bool is_degenerate(const Direction& theta, double tol = kDegeneracyTol);

/// Oriented unit direction of the line Sigma(s,theta) /\ Span(e1,e2),
/// signed so that det(alpha, theta, e3, ..., e_d) > 0. The determinant is
/// evaluated and checked before returning.
Direction alpha_of_theta(const Direction& theta);

/// Same vector computed through the Hodge dual of theta /\ e3 /\ ... /\ e_d,
/// evaluated componentwise as cofactor determinants and then normalized.
/// Independent of alpha_of_theta; used to cross-check it.
Direction alpha_hodge(const Direction& theta);

/// d = 3 only: cross(eta, theta) normalized. With eta = -e3 this coincides
/// with alpha_of_theta.
Direction alpha_3d_legacy(const Direction& theta, const Direction& eta);

/// Frame on Sigma(s,theta) with alpha = alpha_of_theta(theta). seed == 0 gives
/// the deterministic index-ordered Gram-Schmidt completion; seed != 0 applies
/// a seeded random rotation inside the betas' span (the integrals downstream
/// must not depend on that choice).
Frame frame_on_hyperplane(const Direction& theta, std::uint64_t seed = 0);

/// Index-ordered orthonormal completion of {theta}; valid for any theta,
/// including degenerate ones and d = 2. The first tangent plays no special
/// role.
Frame completion_frame(const Direction& theta);

/// Line / Plane / Empty classification of Sigma(s,theta) /\ Span(e1,e2).
IntersectionKind classify_intersection(const Hyperplane& plane);

/// Determinant of the d x d matrix with the given rows.
double det_rows(const std::vector<Vec>& rows);

}  // namespace wradon
