#pragma once

#include <functional>
#include <string>
#include <utility>

#include "wradon/geometry.hpp"

namespace wradon {

enum class Smoothness { analytic, smooth, piecewise };

/// Real scalar function on R^d with a declared compact support radius:
/// evaluate(x) == 0 whenever |x| > support_radius. Immutable; evaluation is
/// pure and thread safe.
class ScalarField {
 public:
  using Evaluator = std::function<double(const Vec&)>;

  ScalarField(int dim, double support_radius, Smoothness tag, Evaluator f)
      : dim_(dim), radius_(support_radius), tag_(tag), f_(std::move(f)) {
    if (dim_ < 1) throw std::invalid_argument("ScalarField: dim must be >= 1");
    if (radius_ <= 0.0)
      throw std::invalid_argument("ScalarField: support radius must be positive");
  }

  double operator()(const Vec& x) const { return f_(x); }

  int dim() const { return dim_; }
  double support_radius() const { return radius_; }
  Smoothness smoothness_tag() const { return tag_; }

 private:
  int dim_;
  double radius_;
  Smoothness tag_;
  Evaluator f_;
};

/// psi(y) = exp(1 - 1/(1 - |y|^2)) on the open unit ball of R^m, 0 outside.
/// Strictly positive on the open ball, psi(0) = 1, support the closed ball.
ScalarField bump_psi(int dimension_m);

/// The stock 2D seed for the null-pair construction: an odd spiral field
///
///   f0(x) = (x1 cos(7 pi u) - x2 sin(7 pi u)) exp(-u),  u = 1/(1 - |x|^2)
///
/// on the open unit disk, 0 outside. The sign-change phase and the decay
/// envelope are functions of the same variable u, so every chord of the disk
/// meets sign changes at a rate matched to the amplitude decay; this keeps
/// per-line mean-to-energy ratios small enough for a strictly positive weight
/// on the whole line family. Odd symmetry handles lines through the origin,
/// and the rotating arm direction leaves no line nodal along its whole length.
ScalarField default_f0();

/// Radial field with a single sign ring: (1 - 2|x|^2) exp(-1/(1 - |x|^2)).
/// Its near-tangent chords are single-signed, so no strictly positive weight
/// can annihilate them; build_null_pair_2d rejects it. Kept as the stock
/// unbalanced specimen for the error path.
ScalarField radial_ring_field();

/// f(x) = psi(x3, ..., x_d) * f0(x1, x2). Support radius is the Pythagorean
/// bound sqrt(r0^2 + rpsi^2) of the product cylinder.
ScalarField lift_field(const ScalarField& f0, const ScalarField& psi, int d);

/// exp(-|x|^2) truncated to 0 for |x| > truncation_R (R >= 6, so the
/// truncation error is below 1e-15). Its classical Radon transform is
/// pi^((d-1)/2) exp(-s^2).
ScalarField gaussian_oracle(int d, double truncation_R);

/// Pointwise |f|; same support.
ScalarField abs_field(const ScalarField& f);

/// Pointwise a * f; same support.
ScalarField scaled_field(const ScalarField& f, double a);

/// Uniform weight w(x, theta) = 1.
double unit_weight(const Vec&, const Direction&);

}  // namespace wradon
