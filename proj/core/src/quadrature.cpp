#include "wradon/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace wradon {

LineRule gauss_legendre_rule(int n, double R) {
  if (n < 2) throw std::invalid_argument("gauss_legendre_rule: n must be >= 2");
  if (n > 1000000) throw std::invalid_argument("gauss_legendre_rule: n too large");
  if (R <= 0.0) throw std::invalid_argument("gauss_legendre_rule: R must be positive");

  LineRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  rule.truncation_radius = R;

  // Newton iteration on P_n with the Bonnet recurrence, seeded by the
  // Chebyshev-like estimate; nodes come out in increasing order.
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        // one final polish
        p0 = 1.0;
        p1 = x;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        pp = n * (x * p1 - p0) / (x * x - 1.0);
        break;
      }
    }
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.nodes[i] = -x * R;
    rule.nodes[n - 1 - i] = x * R;
    rule.weights[i] = w * R;
    rule.weights[n - 1 - i] = w * R;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

FiberRule FiberRule::uniform(int axes_count, int n, double R) {
  if (axes_count < 0) throw std::invalid_argument("FiberRule: negative axis count");
  FiberRule fiber;
  fiber.axes.reserve(axes_count);
  if (axes_count > 0) {
    const LineRule shared = gauss_legendre_rule(n, R);
    for (int i = 0; i < axes_count; ++i) fiber.axes.push_back(shared);
  }
  return fiber;
}

HyperplaneRule HyperplaneRule::uniform(int dim, int n, double R) {
  if (dim < 2) throw std::invalid_argument("HyperplaneRule: dim must be >= 2");
  HyperplaneRule rule;
  rule.alpha_axis = gauss_legendre_rule(n, R);
  rule.transverse = FiberRule::uniform(dim - 2, n, R);
  return rule;
}

double integrate_along_ray(const std::function<double(const Vec&)>& integrand,
                           const Ray& ray, const LineRule& rule) {
  double sum = 0.0;
  Vec x(ray.dim());
  for (int k = 0; k < rule.size(); ++k) {
    x = ray.base() + rule.nodes[k] * ray.direction().vec();
    sum += rule.weights[k] * integrand(x);
  }
  return sum;
}

namespace {

double tensor_sum(const std::function<double(const Vec&)>& integrand,
                  const std::vector<const LineRule*>& axes,
                  const std::vector<const Vec*>& tangents, std::size_t level,
                  const Vec& point) {
  if (level == axes.size()) return integrand(point);
  const LineRule& rule = *axes[level];
  const Vec& dir = *tangents[level];
  double sum = 0.0;
  for (int k = 0; k < rule.size(); ++k) {
    sum += rule.weights[k] *
           tensor_sum(integrand, axes, tangents, level + 1,
                      point + rule.nodes[k] * dir);
  }
  return sum;
}

}  // namespace

double integrate_over_hyperplane(
    const std::function<double(const Vec&)>& integrand, const Hyperplane& plane,
    const Frame& frame, const HyperplaneRule& rule) {
  const int d = plane.dim();
  if (frame.dim() != d) {
    throw std::invalid_argument("integrate_over_hyperplane: frame dimension mismatch");
  }
  if (frame.tangent_count() != d - 1 ||
      rule.transverse.dim() != d - 2) {
    throw std::invalid_argument("integrate_over_hyperplane: rule/frame axis count mismatch");
  }
  std::vector<const LineRule*> axes;
  std::vector<const Vec*> tangents;
  axes.push_back(&rule.alpha_axis);
  tangents.push_back(&frame.alpha.vec());
  for (int i = 0; i < d - 2; ++i) {
    axes.push_back(&rule.transverse.axes[i]);
    tangents.push_back(&frame.betas[i].vec());
  }
  const Vec origin = plane.offset * plane.normal.vec();
  return tensor_sum(integrand, axes, tangents, 0, origin);
}

}  // namespace wradon
