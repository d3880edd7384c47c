#include "wradon/transforms.hpp"

#include <cmath>
#include <stdexcept>

#include "wradon/rng.hpp"

namespace wradon {

RayWeight::RayWeight(Evaluator w, double lower, double upper)
    : w_(std::move(w)), lower_(lower), upper_(upper) {
  if (!(lower_ > 0.0) || !(lower_ <= upper_)) {
    throw WeightBoundViolation("RayWeight: requires 0 < lower <= upper", lower_);
  }
}

RadonWeight::RadonWeight(Evaluator w, double lower, double upper,
                         std::string provenance)
    : w_(std::move(w)),
      lower_(lower),
      upper_(upper),
      provenance_(std::move(provenance)) {
  if (!(lower_ > 0.0) || !(lower_ <= upper_)) {
    throw WeightBoundViolation("RadonWeight: requires 0 < lower <= upper", lower_);
  }
}

double ray_transform(const RayWeight& w, const ScalarField& f, const Ray& ray,
                     const LineRule& rule) {
  if (f.dim() != ray.dim()) {
    throw std::invalid_argument("ray_transform: dimension mismatch");
  }
  // base is the foot of perpendicular, so a base outside the support ball
  // means the whole ray misses it.
  if (ray.base().norm() > f.support_radius()) return 0.0;
  const Direction& dir = ray.direction();
  double sum = 0.0;
  for (int k = 0; k < rule.size(); ++k) {
    const Vec x = ray.base() + rule.nodes[k] * dir.vec();
    const double fv = f(x);
    if (fv != 0.0) sum += rule.weights[k] * w(x, dir) * fv;
  }
  return sum;
}

double radon_direct(const RadonWeight& W, const ScalarField& f,
                    const Hyperplane& plane, const HyperplaneRule& rule) {
  const int d = plane.dim();
  if (f.dim() != d) throw std::invalid_argument("radon_direct: dimension mismatch");
  if (std::abs(plane.offset) > f.support_radius()) return 0.0;

  Frame frame = [&] {
    if (d == 2) {
      Vec perp(2);
      perp << -plane.normal[1], plane.normal[0];
      return Frame{Direction(std::move(perp)), {}};
    }
    if (!is_degenerate(plane.normal)) return frame_on_hyperplane(plane.normal, 0);
    return completion_frame(plane.normal);
  }();

  const Direction& theta = plane.normal;
  return integrate_over_hyperplane(
      [&](const Vec& x) {
        const double fv = f(x);
        return fv == 0.0 ? 0.0 : W(x, theta) * fv;
      },
      plane, frame, rule);
}

double radon_via_rays(const RayWeight& w, const ScalarField& f,
                      const Hyperplane& plane, const Frame& frame,
                      const FiberRule& fiber, const LineRule& line) {
  const int d = plane.dim();
  if (f.dim() != d) throw std::invalid_argument("radon_via_rays: dimension mismatch");
  if (d < 3) throw std::invalid_argument("radon_via_rays: requires d >= 3");
  if (fiber.dim() != d - 2 || frame.tangent_count() != d - 1) {
    throw std::invalid_argument("radon_via_rays: rule/frame axis count mismatch");
  }
  const Direction alpha = alpha_of_theta(plane.normal);
  if ((alpha.vec() - frame.alpha.vec()).lpNorm<Eigen::Infinity>() > 1e-12) {
    throw std::invalid_argument("radon_via_rays: frame.alpha is not alpha(theta)");
  }

  const Vec origin = plane.offset * plane.normal.vec();
  std::vector<int> idx(d - 2, 0);

  // Tensor sum over the fiber, axis 0 outermost.
  double total = 0.0;
  const std::function<void(int, const Vec&, double)> recurse =
      [&](int level, const Vec& base, double weight) {
        if (level == d - 2) {
          // base . alpha == 0 up to rounding: theta and all betas are
          // orthogonal to alpha. Project out the residual so the Ray
          // invariant holds exactly.
          Vec foot = base - base.dot(alpha.vec()) * alpha.vec();
          total += weight * ray_transform(w, f, Ray(std::move(foot), alpha), line);
          return;
        }
        const LineRule& rule = fiber.axes[level];
        const Vec& beta = frame.betas[level].vec();
        for (int k = 0; k < rule.size(); ++k) {
          recurse(level + 1, base + rule.nodes[k] * beta,
                  weight * rule.weights[k]);
        }
      };
  recurse(0, origin, 1.0);
  return total;
}

double radon2d_from_ray(const RayWeight& w, const ScalarField& f, double s,
                        const Direction& theta, const LineRule& rule) {
  if (theta.dim() != 2 || f.dim() != 2) {
    throw std::invalid_argument("radon2d_from_ray: requires d = 2");
  }
  Vec perp(2);
  perp << -theta[1], theta[0];
  Vec base = s * theta.vec();
  base -= base.dot(perp) * perp;  // exact foot of perpendicular
  return ray_transform(w, f, Ray(std::move(base), Direction(std::move(perp))), rule);
}

RadonWeight weight_from_ray_weight(
    const RayWeight& w, std::function<double(const Vec&)> degenerate_policy,
    int dim, const WeightSamplingOptions& options) {
  if (dim < 3) {
    throw std::invalid_argument("weight_from_ray_weight: requires d >= 3");
  }
  if (!degenerate_policy) {
    throw std::invalid_argument("weight_from_ray_weight: policy required");
  }

  // Certify that the degenerate extension stays inside the declared band.
  {
    Rng rng(options.seed);
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i < options.samples; ++i) {
      Vec x(dim);
      for (int k = 0; k < dim; ++k) {
        x[k] = rng.uniform(-options.box_half_width, options.box_half_width);
      }
      const double v = degenerate_policy(x);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (lo < w.lower_bound() - options.slack || hi > w.upper_bound() + options.slack) {
      throw WeightBoundViolation(
          "weight_from_ray_weight: degenerate policy leaves the weight band",
          lo < w.lower_bound() - options.slack ? lo : hi);
    }
  }

  auto policy = std::move(degenerate_policy);
  return RadonWeight(
      [w, policy](const Vec& x, const Direction& theta) {
        if (is_degenerate(theta)) return policy(x);
        return w(x, alpha_of_theta(theta));
      },
      w.lower_bound(), w.upper_bound(), "ray-weight reparametrization");
}

}  // namespace wradon
