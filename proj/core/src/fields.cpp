#include "wradon/fields.hpp"

#include <cmath>

namespace wradon {

namespace {
constexpr double kSpiralDecay = 1.0;
constexpr double kSpiralPhaseTurns = 7.0;  // phase = 7 pi u
}  // namespace

ScalarField bump_psi(int dimension_m) {
  if (dimension_m < 1) {
    throw std::invalid_argument("bump_psi: dimension must be >= 1");
  }
  return ScalarField(dimension_m, 1.0, Smoothness::smooth, [](const Vec& y) {
    const double r2 = y.squaredNorm();
    if (r2 >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - r2));
  });
}

ScalarField default_f0() {
  return ScalarField(2, 1.0, Smoothness::smooth, [](const Vec& x) {
    const double r2 = x.squaredNorm();
    if (r2 >= 1.0) return 0.0;
    const double u = 1.0 / (1.0 - r2);
    const double phase = kSpiralPhaseTurns * M_PI * u;
    return (x[0] * std::cos(phase) - x[1] * std::sin(phase)) *
           std::exp(-kSpiralDecay * u);
  });
}

ScalarField radial_ring_field() {
  return ScalarField(2, 1.0, Smoothness::smooth, [](const Vec& x) {
    const double r2 = x.squaredNorm();
    if (r2 >= 1.0) return 0.0;
    return (1.0 - 2.0 * r2) * std::exp(-1.0 / (1.0 - r2));
  });
}

ScalarField lift_field(const ScalarField& f0, const ScalarField& psi, int d) {
  if (d < 3) throw std::invalid_argument("lift_field: requires d >= 3");
  if (f0.dim() != 2) throw std::invalid_argument("lift_field: f0 must be 2D");
  if (psi.dim() != d - 2) {
    throw std::invalid_argument("lift_field: psi dimension must be d - 2");
  }
  const double radius =
      std::sqrt(f0.support_radius() * f0.support_radius() +
                psi.support_radius() * psi.support_radius());
  return ScalarField(d, radius, Smoothness::smooth,
                     [f0, psi, d](const Vec& x) {
                       const Vec head = x.head(2);
                       const Vec tail = x.tail(d - 2);
                       return psi(tail) * f0(head);
                     });
}

ScalarField gaussian_oracle(int d, double truncation_R) {
  if (d < 2) throw std::invalid_argument("gaussian_oracle: requires d >= 2");
  if (truncation_R < 6.0) {
    throw std::invalid_argument("gaussian_oracle: truncation radius must be >= 6");
  }
  const double r2max = truncation_R * truncation_R;
  return ScalarField(d, truncation_R, Smoothness::analytic,
                     [r2max](const Vec& x) {
                       const double r2 = x.squaredNorm();
                       if (r2 > r2max) return 0.0;
                       return std::exp(-r2);
                     });
}

ScalarField abs_field(const ScalarField& f) {
  return ScalarField(f.dim(), f.support_radius(), Smoothness::piecewise,
                     [f](const Vec& x) { return std::abs(f(x)); });
}

ScalarField scaled_field(const ScalarField& f, double a) {
  return ScalarField(f.dim(), f.support_radius(), f.smoothness_tag(),
                     [f, a](const Vec& x) { return a * f(x); });
}

double unit_weight(const Vec&, const Direction&) { return 1.0; }

}  // namespace wradon
