#pragma once

#include <functional>
#include <memory>
#include <string>

#include "wradon/fields.hpp"
#include "wradon/quadrature.hpp"

namespace wradon {

/// Weight on rays: strictly positive, bounded evaluator (x, direction) -> R
/// with declared band [lower, upper], 0 < lower <= upper.
class RayWeight {
 public:
  using Evaluator = std::function<double(const Vec&, const Direction&)>;

  RayWeight(Evaluator w, double lower, double upper);

  double operator()(const Vec& x, const Direction& theta) const {
    return w_(x, theta);
  }
  double lower_bound() const { return lower_; }
  double upper_bound() const { return upper_; }

 private:
  Evaluator w_;
  double lower_;
  double upper_;
};

/// Weight on hyperplanes, same band conventions. `provenance` is a free-form
/// note when the weight was derived from a ray weight.
class RadonWeight {
 public:
  using Evaluator = std::function<double(const Vec&, const Direction&)>;

  RadonWeight(Evaluator w, double lower, double upper, std::string provenance = {});

  double operator()(const Vec& x, const Direction& theta) const {
    return w_(x, theta);
  }
  double lower_bound() const { return lower_; }
  double upper_bound() const { return upper_; }
  const std::string& provenance() const { return provenance_; }

 private:
  Evaluator w_;
  double lower_;
  double upper_;
  std::string provenance_;
};

/// Weighted ray transform: quadrature of t -> w(x(t), theta) f(x(t)) along the
/// ray. Returns 0 for rays missing the support.
double ray_transform(const RayWeight& w, const ScalarField& f, const Ray& ray,
                     const LineRule& rule);

/// Weighted hyperplane transform by direct (d-1)-dimensional quadrature. The
/// in-plane frame is built internally: the oriented alpha frame for
/// non-degenerate theta, an index-ordered completion otherwise (the value does
/// not depend on the choice), and the single perpendicular for d = 2.
double radon_direct(const RadonWeight& W, const ScalarField& f,
                    const Hyperplane& plane, const HyperplaneRule& rule);

/// Hyperplane transform assembled from ray transforms: fiber sum over
/// tau in R^(d-2) of P_w f(s theta + sum tau_i beta_i, alpha(theta)).
/// Requires non-degenerate theta and frame.alpha == alpha_of_theta(theta).
double radon_via_rays(const RayWeight& w, const ScalarField& f,
                      const Hyperplane& plane, const Frame& frame,
                      const FiberRule& fiber, const LineRule& line);

/// d = 2 equivalence: R_W f(s, theta) = P_w f(s theta, theta_perp) with
/// theta_perp = (-theta_2, theta_1) and W(x, theta) = w(x, theta_perp).
double radon2d_from_ray(const RayWeight& w, const ScalarField& f, double s,
                        const Direction& theta, const LineRule& rule);

/// Options for the sampling check in weight_from_ray_weight.
struct WeightSamplingOptions {
  int samples = 100000;
  double box_half_width = 2.0;
  std::uint64_t seed = 0x77eadful;
  double slack = 1e-9;
};

/// W(x, theta) = w(x, alpha(theta)) for non-degenerate theta, and
/// degenerate_policy(x) on the degenerate set. The policy is sampled at
/// construction and must respect w's band.
RadonWeight weight_from_ray_weight(
    const RayWeight& w, std::function<double(const Vec&)> degenerate_policy,
    int dim, const WeightSamplingOptions& options = {});

}  // namespace wradon
