#pragma once

#include <functional>
#include <vector>

#include "wradon/geometry.hpp"

namespace wradon {

/// 1D quadrature rule on [-truncation_radius, truncation_radius].
struct LineRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  double truncation_radius = 0.0;

  int size() const { return static_cast<int>(nodes.size()); }
};

/// n-point Gauss-Legendre rule scaled to [-R, R]; exact for polynomials of
/// degree <= 2n - 1.
LineRule gauss_legendre_rule(int n, double R);

/// Tensor-product rule over the d-2 transverse axes of a hyperplane-to-rays
/// decomposition; axis 0 is the outermost loop.
struct FiberRule {
  std::vector<LineRule> axes;

  int dim() const { return static_cast<int>(axes.size()); }
  static FiberRule uniform(int axes_count, int n, double R);
};

/// Tensor-product rule over all d-1 in-plane coordinates: one axis along the
/// frame's alpha direction plus a FiberRule over the betas.
struct HyperplaneRule {
  LineRule alpha_axis;
  FiberRule transverse;

  static HyperplaneRule uniform(int dim, int n, double R);
};

/// Sum of weights * integrand(base + t_k * direction).
double integrate_along_ray(const std::function<double(const Vec&)>& integrand,
                           const Ray& ray, const LineRule& rule);

/// Tensor-product sum of integrand over x = s theta + c0 alpha + sum c_i beta_i.
double integrate_over_hyperplane(
    const std::function<double(const Vec&)>& integrand, const Hyperplane& plane,
    const Frame& frame, const HyperplaneRule& rule);

}  // namespace wradon
