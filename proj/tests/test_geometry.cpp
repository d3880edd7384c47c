#include <doctest.h>

#include <cmath>
#include <vector>

#include "wradon/experiment.hpp"
#include "wradon/geometry.hpp"
#include "wradon/rng.hpp"

using namespace wradon;

namespace {

// Independent determinant oracle: cofactor expansion along the first row.
// Quadratic-factorial cost, used only on tiny matrices.
double det_oracle(const std::vector<std::vector<double>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  double sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (m[0][j] == 0.0) continue;
    std::vector<std::vector<double>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<double> row;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != j) row.push_back(m[i][k]);
      }
      minor.push_back(std::move(row));
    }
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    sum += sign * m[0][j] * det_oracle(minor);
  }
  return sum;
}

double orientation_det_oracle(const Vec& alpha, const Direction& theta) {
  const int d = theta.dim();
  std::vector<std::vector<double>> m(d, std::vector<double>(d, 0.0));
  for (int j = 0; j < d; ++j) {
    m[0][j] = alpha[j];
    m[1][j] = theta[j];
  }
  for (int i = 2; i < d; ++i) m[i][i] = 1.0;
  return det_oracle(m);
}

// Enumerates both sign candidates for alpha and keeps the one the
// determinant oracle approves; the implementation must agree with it.
Vec alpha_by_enumeration(const Direction& theta) {
  const int d = theta.dim();
  const double p = std::hypot(theta[0], theta[1]);
  Vec c = Vec::Zero(d);
  c[0] = -theta[1] / p;
  c[1] = theta[0] / p;
  if (orientation_det_oracle(c, theta) > 0.0) return c;
  c = -c;
  REQUIRE(orientation_det_oracle(c, theta) > 0.0);
  return c;
}

Vec make_vec(std::initializer_list<double> v) {
  Vec out(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

}  // namespace

TEST_CASE("Direction validates unit norm and dimension") {
  CHECK_THROWS_AS(Direction(make_vec({1.0, 1.0})), std::invalid_argument);
  CHECK_THROWS_AS(Direction(make_vec({1.0})), std::invalid_argument);
  const Direction d = Direction::normalized(make_vec({3.0, 4.0}));
  CHECK(d[0] == doctest::Approx(0.6));
  CHECK(d[1] == doctest::Approx(0.8));
  CHECK_THROWS_AS(Direction::normalized(make_vec({0.0, 0.0})), std::invalid_argument);
}

TEST_CASE("Ray requires the foot-of-perpendicular representative") {
  const Direction dir = basis_direction(3, 0);
  CHECK_NOTHROW(Ray(make_vec({0.0, 1.0, 2.0}), dir));
  CHECK_THROWS_AS(Ray(make_vec({0.5, 1.0, 2.0}), dir), std::invalid_argument);
}

TEST_CASE("is_degenerate") {
  CHECK(is_degenerate(basis_direction(4, 2)));
  CHECK_FALSE(is_degenerate(basis_direction(4, 0)));
  // |theta . e1| = 1e-12 <= 1e-9
  const double eps = 1e-12;
  Vec v = make_vec({eps, 0.0, std::sqrt(1.0 - eps * eps), 0.0});
  CHECK(is_degenerate(Direction::normalized(v)));
  CHECK_THROWS_AS(is_degenerate(basis_direction(2, 0)), std::invalid_argument);
  CHECK_THROWS_AS(is_degenerate(basis_direction(3, 0), -1.0), std::invalid_argument);
}

TEST_CASE("alpha_of_theta basis cases agree with the determinant oracle") {
  for (int d : {3, 4, 5}) {
    const Direction e1 = basis_direction(d, 0);
    const Direction e2 = basis_direction(d, 1);
    const Vec a1 = alpha_of_theta(e1).vec();
    CHECK((a1 - alpha_by_enumeration(e1)).lpNorm<Eigen::Infinity>() == 0.0);
    CHECK(a1[1] == doctest::Approx(-1.0));  // alpha(e1) = -e2
    const Vec a2 = alpha_of_theta(e2).vec();
    CHECK(a2[0] == doctest::Approx(1.0));  // alpha(e2) = e1
    CHECK((a2 - alpha_by_enumeration(e2)).lpNorm<Eigen::Infinity>() == 0.0);
  }
}

TEST_CASE("alpha_of_theta mixed-direction case, d = 3") {
  // theta = (e1 + e3)/sqrt(2): candidates +/-e2; the oracle picks -e2.
  const Direction theta = Direction::normalized(make_vec({1.0, 0.0, 1.0}));
  const Vec expected = alpha_by_enumeration(theta);
  CHECK(expected[1] == doctest::Approx(-1.0));
  const Vec got = alpha_of_theta(theta).vec();
  CHECK((got - expected).lpNorm<Eigen::Infinity>() < 1e-15);
}

TEST_CASE("alpha_of_theta rejects degenerate directions") {
  CHECK_THROWS_AS(alpha_of_theta(basis_direction(3, 2)), DegenerateDirectionError);
  CHECK_THROWS_AS(alpha_hodge(basis_direction(4, 3)), DegenerateDirectionError);
}

TEST_CASE("alpha properties on random directions") {
  for (int d : {3, 4, 5}) {
    Rng rng(42 + d);
    for (int i = 0; i < 1000; ++i) {
      const Direction theta = random_nondegenerate_direction(d, rng);
      const Direction alpha = alpha_of_theta(theta);
      CHECK(std::abs(alpha.vec().norm() - 1.0) <= 1e-12);
      CHECK(std::abs(alpha.vec().dot(theta.vec())) <= 1e-12);
      for (int k = 2; k < d; ++k) CHECK(std::abs(alpha[k]) <= 1e-12);
      CHECK(orientation_det_oracle(alpha.vec(), theta) > 1e-15);
      // Hodge route must agree.
      const Direction hodge = alpha_hodge(theta);
      CHECK((alpha.vec() - hodge.vec()).lpNorm<Eigen::Infinity>() <= 1e-12);
    }
  }
}

TEST_CASE("alpha depends only on the normalized projection onto span(e1,e2)") {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const int d = 4;
    const Direction theta = random_nondegenerate_direction(d, rng);
    // Same (theta1, theta2), different tail, renormalized.
    Vec other = theta.vec();
    other[2] = 0.3 * other[2] + 0.1;
    other[3] = -0.7 * other[3];
    const Direction theta2 = Direction::normalized(std::move(other));
    const Vec a = alpha_of_theta(theta).vec();
    const Vec b = alpha_of_theta(theta2).vec();
    CHECK((a - b).lpNorm<Eigen::Infinity>() <= 1e-12);
  }
}

TEST_CASE("alpha_hodge hand-expanded basis cases") {
  // d = 3, theta = e1: the dual of e1 /\ e3 is -e2 and the prefactor is +1.
  const Vec a3 = alpha_hodge(basis_direction(3, 0)).vec();
  CHECK(a3[0] == doctest::Approx(0.0));
  CHECK(a3[1] == doctest::Approx(-1.0));
  CHECK(a3[2] == doctest::Approx(0.0));
  // d = 4, theta = e2 -> e1.
  const Vec a4 = alpha_hodge(basis_direction(4, 1)).vec();
  CHECK(a4[0] == doctest::Approx(1.0));
  CHECK(std::abs(a4[1]) + std::abs(a4[2]) + std::abs(a4[3]) < 1e-15);
}

TEST_CASE("alpha_3d_legacy cross-product oracle") {
  const Direction e1 = basis_direction(3, 0);
  const Direction e3 = basis_direction(3, 2);

  // [-e3, e1] = -e2
  const Vec a = alpha_3d_legacy(e1, -e3).vec();
  CHECK(a[1] == doctest::Approx(-1.0));
  // [e3, e1] = e2
  const Vec b = alpha_3d_legacy(e1, e3).vec();
  CHECK(b[1] == doctest::Approx(1.0));
  CHECK_THROWS_AS(alpha_3d_legacy(e3, e3), DegenerateDirectionError);

  // With eta = -e3 this is alpha_of_theta.
  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    const Direction theta = random_nondegenerate_direction(3, rng);
    const Vec lhs = alpha_3d_legacy(theta, -e3).vec();
    const Vec rhs = alpha_of_theta(theta).vec();
    CHECK((lhs - rhs).lpNorm<Eigen::Infinity>() <= 1e-12);
  }
}

TEST_CASE("frame_on_hyperplane deterministic completion") {
  // theta = e1, d = 3: alpha = -e2, the only completion is e3.
  const Frame f3 = frame_on_hyperplane(basis_direction(3, 0), 0);
  CHECK(f3.alpha.vec()[1] == doctest::Approx(-1.0));
  REQUIRE(f3.betas.size() == 1);
  CHECK(f3.betas[0].vec()[2] == doctest::Approx(1.0));

  const Frame f4 = frame_on_hyperplane(basis_direction(4, 0), 0);
  REQUIRE(f4.betas.size() == 2);
  CHECK(f4.betas[0].vec()[2] == doctest::Approx(1.0));
  CHECK(f4.betas[1].vec()[3] == doctest::Approx(1.0));
}

TEST_CASE("frames are orthonormal for random theta and seeds") {
  for (int d : {3, 4, 5}) {
    Rng rng(100 + d);
    for (int i = 0; i < 200; ++i) {
      const Direction theta = random_nondegenerate_direction(d, rng);
      for (std::uint64_t seed : {std::uint64_t{0}, std::uint64_t{1}, std::uint64_t{99}}) {
        const Frame frame = frame_on_hyperplane(theta, seed);
        std::vector<Vec> basis = {theta.vec(), frame.alpha.vec()};
        for (const Direction& b : frame.betas) basis.push_back(b.vec());
        REQUIRE(static_cast<int>(basis.size()) == d);
        for (std::size_t a = 0; a < basis.size(); ++a) {
          for (std::size_t b = 0; b < basis.size(); ++b) {
            const double want = a == b ? 1.0 : 0.0;
            CHECK(std::abs(basis[a].dot(basis[b]) - want) <= 1e-10);
          }
        }
      }
    }
  }
}

TEST_CASE("completion_frame spans the tangent space, degenerate included") {
  const Direction e3 = basis_direction(4, 2);
  const Frame frame = completion_frame(e3);
  CHECK(frame.tangent_count() == 3);
  for (int i = 0; i < frame.tangent_count(); ++i) {
    CHECK(std::abs(frame.tangent(i).vec().dot(e3.vec())) <= 1e-12);
  }
}

TEST_CASE("classify_intersection three cases") {
  CHECK(classify_intersection(Hyperplane(0.7, basis_direction(3, 0))) ==
        IntersectionKind::Line);
  CHECK(classify_intersection(Hyperplane(0.0, basis_direction(3, 2))) ==
        IntersectionKind::Plane);
  CHECK(classify_intersection(Hyperplane(1.0, basis_direction(3, 2))) ==
        IntersectionKind::Empty);
}

TEST_CASE("classify agrees with the degeneracy predicate on random samples") {
  for (int d : {3, 4}) {
    Rng rng(5 + d);
    int checked = 0;
    for (int i = 0; i < 5000; ++i) {
      Vec v = rng.normal_vector(d);
      if (i % 5 == 0) {
        v[0] = 0.0;  // exact degenerate
        v[1] = 0.0;
      }
      if (v.norm() < 1e-8) continue;
      const Direction theta = Direction::normalized(std::move(v));
      const double s = rng.uniform(-1.0, 1.0) < 0.0 ? 0.0 : 0.5;
      const IntersectionKind kind = classify_intersection(Hyperplane(s, theta));
      const bool deg = is_degenerate(theta);
      const IntersectionKind expect =
          !deg ? IntersectionKind::Line
               : (s == 0.0 ? IntersectionKind::Plane : IntersectionKind::Empty);
      CHECK(kind == expect);
      ++checked;
    }
    CHECK(checked > 4000);
  }
}
