#include "wradon/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

#include "wradon/rng.hpp"

namespace wradon {

Direction::Direction(Vec components) : v_(std::move(components)) {
  if (v_.size() < 2) {
    throw std::invalid_argument("Direction: dimension must be >= 2");
  }
  const double n = v_.norm();
  if (std::abs(n - 1.0) > kUnitNormTol) {
    throw std::invalid_argument("Direction: vector is not unit length");
  }
}

Direction Direction::normalized(Vec components) {
  const double n = components.norm();
  if (n <= 0.0 || !std::isfinite(n)) {
    throw std::invalid_argument("Direction::normalized: zero or non-finite vector");
  }
  return Direction(components / n);
}

Direction Direction::operator-() const {
  Direction d(*this);
  d.v_ = -d.v_;
  return d;
}

Direction basis_direction(int dim, int index) {
  if (index < 0 || index >= dim) {
    throw std::invalid_argument("basis_direction: index out of range");
  }
  Vec v = Vec::Zero(dim);
  v[index] = 1.0;
  return Direction(std::move(v));
}

Ray::Ray(Vec base, Direction direction)
    : base_(std::move(base)), dir_(std::move(direction)) {
  if (base_.size() != dir_.dim()) {
    throw std::invalid_argument("Ray: base and direction dimensions differ");
  }
  if (std::abs(base_.dot(dir_.vec())) > 1e-10) {
    throw std::invalid_argument("Ray: base is not the foot of perpendicular");
  }
}

bool is_degenerate(const Direction& theta, double tol) {
  if (theta.dim() < 3) {
    throw std::invalid_argument("is_degenerate: requires dimension >= 3");
  }
  if (tol <= 0.0) {
    throw std::invalid_argument("is_degenerate: tol must be positive");
  }
  return std::abs(theta[0]) <= tol && std::abs(theta[1]) <= tol;
}

double det_rows(const std::vector<Vec>& rows) {
  const int d = static_cast<int>(rows.size());
  Eigen::MatrixXd m(d, d);
  for (int i = 0; i < d; ++i) {
    if (rows[i].size() != d) {
      throw std::invalid_argument("det_rows: non-square row set");
    }
    m.row(i) = rows[i];
  }
  return m.determinant();
}

namespace {

// Rows (v, theta, e3, ..., e_d) for the orientation determinant.
double orientation_det(const Vec& v, const Direction& theta) {
  const int d = theta.dim();
  std::vector<Vec> rows;
  rows.reserve(d);
  rows.push_back(v);
  rows.push_back(theta.vec());
  for (int i = 2; i < d; ++i) rows.push_back(basis_direction(d, i).vec());
  return det_rows(rows);
}

}  // namespace

Direction alpha_of_theta(const Direction& theta) {
  if (is_degenerate(theta)) {
    throw DegenerateDirectionError(
        "alpha_of_theta: theta is orthogonal to e1 and e2");
  }
  const int d = theta.dim();
  const double p = std::hypot(theta[0], theta[1]);
  Vec candidate = Vec::Zero(d);
  candidate[0] = -theta[1] / p;
  candidate[1] = theta[0] / p;
  double det = orientation_det(candidate, theta);
  if (det < 0.0) {
    candidate = -candidate;
    det = -det;
  }
  if (!(det > 1e-15)) {
    throw DegenerateDirectionError("alpha_of_theta: orientation determinant not positive");
  }
  return Direction(std::move(candidate));
}

Direction alpha_hodge(const Direction& theta) {
  const int d = theta.dim();
  if (is_degenerate(theta)) {
    throw DegenerateDirectionError("alpha_hodge: blade is zero for degenerate theta");
  }
  // Hodge dual of theta /\ e3 /\ ... /\ e_d: component i is
  // det(theta, e3, ..., e_d, e_i).
  Vec dual(d);
  for (int i = 0; i < d; ++i) {
    std::vector<Vec> rows;
    rows.reserve(d);
    rows.push_back(theta.vec());
    for (int k = 2; k < d; ++k) rows.push_back(basis_direction(d, k).vec());
    rows.push_back(basis_direction(d, i).vec());
    dual[i] = det_rows(rows);
  }
  const double sign = (d % 2 == 0) ? -1.0 : 1.0;  // (-1)^(d-1)
  dual *= sign;
  const double n = dual.norm();
  if (n <= kDegeneracyTol) {
    throw DegenerateDirectionError("alpha_hodge: blade norm below tolerance");
  }
  return Direction(dual / n);
}

Direction alpha_3d_legacy(const Direction& theta, const Direction& eta) {
  if (theta.dim() != 3 || eta.dim() != 3) {
    throw std::invalid_argument("alpha_3d_legacy: requires dimension 3");
  }
  const Eigen::Vector3d t(theta[0], theta[1], theta[2]);
  const Eigen::Vector3d e(eta[0], eta[1], eta[2]);
  const Eigen::Vector3d c = e.cross(t);
  const double n = c.norm();
  if (n <= kDegeneracyTol) {
    throw DegenerateDirectionError("alpha_3d_legacy: theta = +/- eta");
  }
  Vec v(3);
  v << c[0] / n, c[1] / n, c[2] / n;
  return Direction(std::move(v));
}

namespace {

// Gram-Schmidt completion of `fixed` to a full orthonormal basis of R^d,
// trying the standard basis vectors in index order and skipping candidates
// whose residual is below `threshold`. Returns only the new vectors.
std::vector<Vec> complete_basis(const std::vector<Vec>& fixed, int d,
                                double threshold = 1e-6) {
  std::vector<Vec> basis = fixed;
  std::vector<Vec> added;
  for (int k = 0; k < d && static_cast<int>(basis.size()) < d; ++k) {
    Vec v = Vec::Zero(d);
    v[k] = 1.0;
    for (const Vec& b : basis) v -= v.dot(b) * b;
    const double n = v.norm();
    if (n > threshold) {
      v /= n;
      basis.push_back(v);
      added.push_back(std::move(v));
    }
  }
  if (static_cast<int>(basis.size()) != d) {
    throw std::logic_error("complete_basis: failed to complete basis");
  }
  return added;
}

}  // namespace

Frame frame_on_hyperplane(const Direction& theta, std::uint64_t seed) {
  const Direction alpha = alpha_of_theta(theta);
  const int d = theta.dim();
  std::vector<Vec> fixed = {theta.vec(), alpha.vec()};
  std::vector<Vec> raw = complete_basis(fixed, d);

  if (seed != 0 && raw.size() >= 2) {
    // Random orthogonal mix inside span(betas): QR of a seeded Gaussian
    // matrix, with the sign convention R_ii > 0 for determinism.
    const int m = static_cast<int>(raw.size());
    Rng rng(seed);
    Eigen::MatrixXd g(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) g(i, j) = rng.normal();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
    Eigen::MatrixXd q = qr.householderQ();
    Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < m; ++j)
      if (r(j, j) < 0) q.col(j) = -q.col(j);
    std::vector<Vec> mixed(m, Vec::Zero(d));
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < m; ++i) mixed[j] += q(i, j) * raw[i];
    raw = std::move(mixed);
  }

  std::vector<Direction> betas;
  betas.reserve(raw.size());
  for (Vec& v : raw) betas.push_back(Direction::normalized(std::move(v)));
  return Frame{alpha, std::move(betas)};
}

Frame completion_frame(const Direction& theta) {
  const int d = theta.dim();
  std::vector<Vec> raw = complete_basis({theta.vec()}, d);
  std::vector<Direction> tangents;
  tangents.reserve(raw.size());
  for (Vec& v : raw) tangents.push_back(Direction::normalized(std::move(v)));
  Direction first = tangents.front();
  std::vector<Direction> rest(tangents.begin() + 1, tangents.end());
  return Frame{std::move(first), std::move(rest)};
}

IntersectionKind classify_intersection(const Hyperplane& plane) {
  if (!is_degenerate(plane.normal)) return IntersectionKind::Line;
  if (std::abs(plane.offset) <= 1e-12) return IntersectionKind::Plane;
  return IntersectionKind::Empty;
}

}  // namespace wradon
