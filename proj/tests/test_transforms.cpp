#include <doctest.h>

#include <cmath>

#include "wradon/experiment.hpp"
#include "wradon/transforms.hpp"

using namespace wradon;

namespace {

Vec make_vec(std::initializer_list<double> v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

RayWeight unit_ray_weight() {
  return RayWeight([](const Vec&, const Direction&) { return 1.0; }, 1.0, 1.0);
}

RadonWeight unit_radon_weight() {
  return RadonWeight([](const Vec&, const Direction&) { return 1.0; }, 1.0, 1.0);
}

double gaussian_radon(int d, double s) {
  return std::pow(M_PI, 0.5 * (d - 1)) * std::exp(-s * s);
}

}  // namespace

TEST_CASE("weights validate their band") {
  CHECK_THROWS_AS(RayWeight([](const Vec&, const Direction&) { return 1.0; }, 0.0, 1.0),
                  WeightBoundViolation);
  CHECK_THROWS_AS(RayWeight([](const Vec&, const Direction&) { return 1.0; }, 2.0, 1.0),
                  WeightBoundViolation);
}

TEST_CASE("ray_transform Gaussian and linearity in w") {
  const ScalarField f = gaussian_oracle(2, 6.0);
  const LineRule rule = gauss_legendre_rule(64, 6.0);
  const Ray ray(Vec::Zero(2), basis_direction(2, 1));
  const double base = ray_transform(unit_ray_weight(), f, ray, rule);
  CHECK(std::abs(base - std::sqrt(M_PI)) <= 1e-12);

  const RayWeight twice([](const Vec&, const Direction&) { return 2.0; }, 2.0, 2.0);
  CHECK(ray_transform(twice, f, ray, rule) == doctest::Approx(2.0 * base).epsilon(1e-15));

  // Ray missing the support.
  const Ray far(make_vec({7.0, 0.0}), basis_direction(2, 1));
  CHECK(ray_transform(unit_ray_weight(), f, far, rule) == 0.0);
}

TEST_CASE("radon_direct reproduces the Gaussian closed form") {
  for (int d : {3, 4}) {
    const ScalarField f = gaussian_oracle(d, 6.0);
    const HyperplaneRule rule = HyperplaneRule::uniform(d, 64, 6.0);
    Rng rng(20 + d);
    for (int i = 0; i < 5; ++i) {
      const Direction theta = random_nondegenerate_direction(d, rng);
      for (double s : {0.0, 0.5, 1.0}) {
        const double got = radon_direct(unit_radon_weight(), f, Hyperplane(s, theta), rule);
        const double want = gaussian_radon(d, s);
        CHECK(std::abs(got - want) <= 1e-9 * want);
      }
    }
    // Plane missing the support.
    CHECK(radon_direct(unit_radon_weight(), f, Hyperplane(7.0, basis_direction(d, 0)),
                       rule) == 0.0);
  }
  // d = 4, s = 1 spot value.
  const ScalarField f4 = gaussian_oracle(4, 6.0);
  const HyperplaneRule rule4 = HyperplaneRule::uniform(4, 64, 6.0);
  const double got = radon_direct(unit_radon_weight(), f4,
                                  Hyperplane(1.0, basis_direction(4, 1)), rule4);
  CHECK(std::abs(got - std::pow(M_PI, 1.5) * std::exp(-1.0)) <=
        1e-9 * std::pow(M_PI, 1.5));
}

TEST_CASE("radon_direct value is independent of theta for radial fields") {
  const ScalarField f = gaussian_oracle(3, 6.0);
  const HyperplaneRule rule = HyperplaneRule::uniform(3, 48, 6.0);
  Rng rng(31);
  const double ref = radon_direct(unit_radon_weight(), f,
                                  Hyperplane(0.5, basis_direction(3, 0)), rule);
  for (int i = 0; i < 5; ++i) {
    const Direction theta = random_nondegenerate_direction(3, rng);
    const double got = radon_direct(unit_radon_weight(), f, Hyperplane(0.5, theta), rule);
    CHECK(std::abs(got - ref) <= 1e-9 * (1.0 + std::abs(ref)));
  }
}

TEST_CASE("radon_via_rays agrees with radon_direct") {
  for (int d : {3, 4}) {
    const ScalarField f = gaussian_oracle(d, 6.0);
    const RayWeight w1 = unit_ray_weight();
    const RadonWeight W1 = weight_from_ray_weight(
        w1, [](const Vec&) { return 1.0; }, d, {.samples = 100});
    const HyperplaneRule direct_rule = HyperplaneRule::uniform(d, 64, 6.0);
    const FiberRule fiber = FiberRule::uniform(d - 2, 64, 6.0);
    const LineRule line = gauss_legendre_rule(64, 6.0);
    Rng rng(40 + d);
    for (int i = 0; i < (d == 3 ? 8 : 3); ++i) {
      const double s = rng.uniform(-1.5, 1.5);
      const Direction theta = random_nondegenerate_direction(d, rng);
      const Hyperplane plane(s, theta);
      const Frame frame = frame_on_hyperplane(theta, 0);
      const double direct = radon_direct(W1, f, plane, direct_rule);
      const double viarays = radon_via_rays(w1, f, plane, frame, fiber, line);
      CHECK(std::abs(direct - viarays) <= 1e-8 * (1.0 + std::abs(direct)));
      if (d == 3 && i == 0) {
        CHECK(std::abs(direct - gaussian_radon(3, s)) <= 1e-9 * gaussian_radon(3, s));
      }
    }
  }
}

TEST_CASE("radon_via_rays requires the oriented alpha frame") {
  const ScalarField f = gaussian_oracle(3, 6.0);
  const RayWeight w1 = unit_ray_weight();
  const Direction theta = basis_direction(3, 0);
  Frame frame = frame_on_hyperplane(theta, 0);
  const FiberRule fiber = FiberRule::uniform(1, 16, 6.0);
  const LineRule line = gauss_legendre_rule(16, 6.0);
  // Flip alpha: the orientation contract is violated.
  Frame bad{-frame.alpha, frame.betas};
  CHECK_THROWS_AS(radon_via_rays(w1, f, Hyperplane(0.0, theta), bad, fiber, line),
                  std::invalid_argument);
  CHECK_THROWS_AS(radon_via_rays(w1, f, Hyperplane(0.0, basis_direction(3, 2)),
                                 frame, fiber, line),
                  DegenerateDirectionError);
}

TEST_CASE("radon2d_from_ray equals direct 2D line quadrature") {
  const ScalarField f = gaussian_oracle(2, 6.0);
  const RayWeight w1 = unit_ray_weight();
  const LineRule rule = gauss_legendre_rule(64, 6.0);
  const HyperplaneRule rule2d = HyperplaneRule::uniform(2, 64, 6.0);
  const RadonWeight W1 = unit_radon_weight();
  Rng rng(50);
  for (int i = 0; i < 100; ++i) {
    const double s = rng.uniform(-2.0, 2.0);
    const double phi = rng.uniform(0.0, 2.0 * M_PI);
    const Direction theta = Direction::normalized(make_vec({std::cos(phi), std::sin(phi)}));
    const double via_ray = radon2d_from_ray(w1, f, s, theta, rule);
    const double direct = radon_direct(W1, f, Hyperplane(s, theta), rule2d);
    CHECK(std::abs(via_ray - direct) <= 1e-10 * (1.0 + std::abs(direct)));
    if (i == 0) {
      CHECK(std::abs(via_ray - std::sqrt(M_PI) * std::exp(-s * s)) <= 1e-12);
    }
  }
}

TEST_CASE("radon2d_from_ray ray geometry") {
  // theta = e1: base (s, 0), direction (0, 1); perpendicularity is structural.
  const ScalarField f = gaussian_oracle(2, 6.0);
  const RayWeight probe(
      [](const Vec& x, const Direction& dir) {
        CHECK(std::abs(x.dot(dir.vec())) <= 6.0 + 1e-12);  // on the line
        return 1.0;
      },
      1.0, 1.0);
  const LineRule rule = gauss_legendre_rule(8, 6.0);
  (void)radon2d_from_ray(probe, f, 0.75, basis_direction(2, 0), rule);
  CHECK_THROWS_AS(radon2d_from_ray(probe, gaussian_oracle(3, 6.0), 0.0,
                                   basis_direction(2, 0), rule),
                  std::invalid_argument);
}

TEST_CASE("weight_from_ray_weight reparametrization and Remark-2 style policy") {
  const int d = 4;
  // w(x, a) responds to the direction so the alpha wiring is visible.
  const RayWeight w(
      [](const Vec& x, const Direction& a) {
        return 1.0 + 0.25 * a[0] + 0.125 * a[1] + 0.0 * x[0];
      },
      0.5, 1.5);
  const RadonWeight W = weight_from_ray_weight(
      w, [](const Vec&) { return 1.0; }, d, {.samples = 1000});

  const Vec x = make_vec({0.1, -0.2, 0.3, 0.4});
  // theta = e1: alpha = -e2, so W(x, e1) = w(x, -e2).
  CHECK(W(x, basis_direction(d, 0)) == w(x, -basis_direction(d, 1)));
  // theta = e2: alpha = e1.
  CHECK(W(x, basis_direction(d, 1)) == w(x, basis_direction(d, 0)));
  // Degenerate theta goes through the policy.
  CHECK(W(x, basis_direction(d, 2)) == 1.0);

  // Bounds transfer on random samples.
  Rng rng(60);
  for (int i = 0; i < 1000; ++i) {
    const Direction theta = random_nondegenerate_direction(d, rng);
    const double v = W(rng.normal_vector(d), theta);
    CHECK(v >= W.lower_bound() - 1e-12);
    CHECK(v <= W.upper_bound() + 1e-12);
  }
}

TEST_CASE("weight_from_ray_weight rejects an out-of-band policy") {
  const RayWeight w([](const Vec&, const Direction&) { return 1.0; }, 0.9, 1.1);
  CHECK_THROWS_AS(
      weight_from_ray_weight(w, [](const Vec&) { return 5.0; }, 3, {.samples = 100}),
      WeightBoundViolation);
}

TEST_CASE("homogeneity: scaling the weight scales the transform") {
  const ScalarField f = gaussian_oracle(3, 6.0);
  const HyperplaneRule rule = HyperplaneRule::uniform(3, 32, 6.0);
  const Hyperplane plane(0.4, basis_direction(3, 0));
  const RadonWeight W1 = unit_radon_weight();
  const RadonWeight W3([](const Vec&, const Direction&) { return 3.0; }, 3.0, 3.0);
  const double a = radon_direct(W1, f, plane, rule);
  const double b = radon_direct(W3, f, plane, rule);
  CHECK(b == doctest::Approx(3.0 * a).epsilon(1e-14));
}
