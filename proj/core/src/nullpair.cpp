#include "wradon/nullpair.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "wradon/grid_field.hpp"
#include "wradon/rng.hpp"

namespace wradon {

LineCoords line_coordinates(const Eigen::Vector2d& point,
                            const Eigen::Vector2d& direction) {
  // Normal is the direction rotated by -90 degrees; flip (s, n) so that the
  // normal angle lands in [0, pi). Both orientations give the same result.
  double nx = direction.y();
  double ny = -direction.x();
  double s = point.x() * nx + point.y() * ny;
  double phi = std::atan2(ny, nx);
  if (phi < 0.0) {
    phi += M_PI;
    s = -s;
  }
  if (phi >= M_PI) {  // atan2 == pi
    phi -= M_PI;
    s = -s;
  }
  return {s, phi};
}

LineFamily2D LineFamily2D::uniform(int n_phi, int n_s, double radius,
                                   int line_nodes) {
  if (n_phi < 8 || n_s < 8) {
    throw std::invalid_argument("LineFamily2D: needs n_phi >= 8 and n_s >= 8");
  }
  if (radius <= 0.0) throw std::invalid_argument("LineFamily2D: radius must be positive");
  LineFamily2D family;
  family.radius = radius;
  family.angles.resize(n_phi);
  for (int j = 0; j < n_phi; ++j) {
    family.angles[j] = static_cast<double>(j) * M_PI / static_cast<double>(n_phi);
  }
  family.offsets.resize(n_s);
  for (int i = 0; i < n_s; ++i) {
    // Exactly antisymmetric: offsets[n_s - 1 - i] == -offsets[i].
    family.offsets[i] = radius * static_cast<double>(2 * i - (n_s - 1)) /
                        static_cast<double>(n_s - 1);
  }
  family.rule = gauss_legendre_rule(line_nodes, radius);
  return family;
}

NullPair2D build_null_pair_2d(const ScalarField& f0, const LineFamily2D& family) {
  if (f0.dim() != 2) throw std::invalid_argument("build_null_pair_2d: f0 must be 2D");
  const int n_phi = family.n_phi();
  const int n_s = family.n_s();
  const int nodes = family.rule.size();

  Eigen::MatrixXd g(n_phi, n_s), h(n_phi, n_s), fmin(n_phi, n_s), fmax(n_phi, n_s);
  double global_fmax = 0.0;
  double global_min = 0.0, global_max = 0.0;

  Vec x(2);
  for (int j = 0; j < n_phi; ++j) {
    const double phi = family.angles[j];
    const double nx = std::cos(phi), ny = std::sin(phi);
    const double dx = -ny, dy = nx;
    for (int i = 0; i < n_s; ++i) {
      const double s = family.offsets[i];
      double gs = 0.0, hs = 0.0;
      double lo = 0.0, hi = 0.0;
      for (int k = 0; k < nodes; ++k) {
        const double t = family.rule.nodes[k];
        x[0] = s * nx + t * dx;
        x[1] = s * ny + t * dy;
        const double fv = f0(x);
        gs += family.rule.weights[k] * fv;
        hs += family.rule.weights[k] * fv * fv;
        lo = std::min(lo, fv);
        hi = std::max(hi, fv);
      }
      g(j, i) = gs;
      h(j, i) = hs;
      fmin(j, i) = lo;
      fmax(j, i) = hi;
      global_fmax = std::max(global_fmax, std::max(-lo, hi));
      global_min = std::min(global_min, lo);
      global_max = std::max(global_max, hi);
    }
  }

  if (!(global_min < 0.0 && global_max > 0.0)) {
    throw std::invalid_argument(
        "build_null_pair_2d: f0 must change sign on the family nodes");
  }

  const double h_floor = 1e-12 * global_fmax * global_fmax * 2.0 * family.radius;

  NullPair2D pair(f0, family);
  pair.h_floor_ = h_floor;
  pair.lambda_.resize(n_phi, n_s);
  double sup_lf = 0.0;
  double w_raw_min = 1.0, w_raw_max = 1.0;
  int active = 0;
  for (int j = 0; j < n_phi; ++j) {
    for (int i = 0; i < n_s; ++i) {
      if (h(j, i) > h_floor) {
        const double lambda = g(j, i) / h(j, i);
        pair.lambda_(j, i) = lambda;
        ++active;
        const double lf_lo = std::min(lambda * fmin(j, i), lambda * fmax(j, i));
        const double lf_hi = std::max(lambda * fmin(j, i), lambda * fmax(j, i));
        sup_lf = std::max(sup_lf, std::max(-lf_lo, lf_hi));
        w_raw_min = std::min(w_raw_min, 1.0 - lf_hi);
        w_raw_max = std::max(w_raw_max, 1.0 - lf_lo);
      } else {
        pair.lambda_(j, i) = 0.0;
      }
    }
  }
  if (active == 0) {
    throw DegenerateF0Error(
        "build_null_pair_2d: every family line is below the energy floor");
  }
  if (sup_lf > 2.0 / 3.0) {
    throw WeightBoundViolation(
        "build_null_pair_2d: sup |lambda * f0| = " + format_double(sup_lf) +
            " exceeds 2/3; the supplied f0 has a line whose mean-to-energy "
            "ratio is too large for a strictly positive weight",
        sup_lf);
  }

  pair.sup_lambda_f0_ = sup_lf;
  pair.rescale_ = 1.0 / w_raw_max;
  pair.w_min_ = w_raw_min * pair.rescale_;
  pair.w_max_ = 1.0;
  return pair;
}

double NullPair2D::lambda_at(double s, double phi) const {
  const int n_phi = family_.n_phi();
  const int n_s = family_.n_s();
  // Canonicalize into phi in [0, pi) with the s sign flip.
  phi = std::fmod(phi, 2.0 * M_PI);
  if (phi < 0.0) phi += 2.0 * M_PI;
  if (phi >= M_PI) {
    phi -= M_PI;
    s = -s;
  }
  const double ds = family_.offsets[1] - family_.offsets[0];
  const double dphi = M_PI / static_cast<double>(n_phi);
  const double fs = (s - family_.offsets[0]) / ds;
  const double fp = phi / dphi;
  const double is = std::floor(fs);
  const double jp = std::floor(fp);
  if (is < -2.0 || is > static_cast<double>(n_s) + 1.0) return 0.0;
  const int i0 = static_cast<int>(is);
  const int j0 = static_cast<int>(jp);
  double ws[4], wp[4];
  catmull_rom_weights(fs - is, ws);
  catmull_rom_weights(fp - jp, wp);

  double out = 0.0;
  for (int b = 0; b < 4; ++b) {
    int j = j0 - 1 + b;
    // Wrapping across phi = 0 or pi continues the table with s negated.
    bool flip = false;
    while (j < 0) {
      j += n_phi;
      flip = !flip;
    }
    while (j >= n_phi) {
      j -= n_phi;
      flip = !flip;
    }
    double row = 0.0;
    for (int a = 0; a < 4; ++a) {
      const int i = i0 - 1 + a;
      if (i < 0 || i >= n_s) continue;
      const int ii = flip ? (n_s - 1 - i) : i;
      row += ws[a] * lambda_(j, ii);
    }
    out += wp[b] * row;
  }
  return out;
}

double NullPair2D::eval_w0(const Eigen::Vector2d& x,
                           const Eigen::Vector2d& direction) const {
  const LineCoords lc = line_coordinates(x, direction);
  const double lambda = lambda_at(lc.s, lc.phi);
  Vec p(2);
  p << x.x(), x.y();
  return rescale_ * (1.0 - lambda * f0_(p));
}

void NullPair2D::save(const std::string& json_path, const std::string& csv_path) const {
  nlohmann::json j;
  j["n_phi"] = family_.n_phi();
  j["n_s"] = family_.n_s();
  j["radius"] = format_double(family_.radius);
  j["line_nodes"] = family_.rule.size();
  j["rescale"] = format_double(rescale_);
  j["weight_min"] = format_double(w_min_);
  j["weight_max"] = format_double(w_max_);
  j["sup_lambda_f0"] = format_double(sup_lambda_f0_);
  j["h_floor"] = format_double(h_floor_);
  j["lambda_csv"] = csv_path.substr(csv_path.find_last_of('/') + 1);
  std::ofstream out(json_path, std::ios::binary);
  if (!out) throw std::runtime_error("NullPair2D::save: cannot open " + json_path);
  out << j.dump(2) << "\n";

  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) throw std::runtime_error("NullPair2D::save: cannot open " + csv_path);
  for (int jrow = 0; jrow < family_.n_phi(); ++jrow) {
    for (int i = 0; i < family_.n_s(); ++i) {
      if (i) csv << ",";
      csv << format_double(lambda_(jrow, i));
    }
    csv << "\n";
  }
}

NullPair2D NullPair2D::load(const ScalarField& f0, const std::string& json_path,
                            const std::string& csv_path) {
  std::ifstream in(json_path, std::ios::binary);
  if (!in) throw std::runtime_error("NullPair2D::load: cannot open " + json_path);
  nlohmann::json j;
  in >> j;
  const int n_phi = j.at("n_phi").get<int>();
  const int n_s = j.at("n_s").get<int>();
  const double radius = parse_double(j.at("radius").get<std::string>());
  const int line_nodes = j.at("line_nodes").get<int>();

  NullPair2D pair(f0, LineFamily2D::uniform(n_phi, n_s, radius, line_nodes));
  pair.rescale_ = parse_double(j.at("rescale").get<std::string>());
  pair.w_min_ = parse_double(j.at("weight_min").get<std::string>());
  pair.w_max_ = parse_double(j.at("weight_max").get<std::string>());
  pair.sup_lambda_f0_ = parse_double(j.at("sup_lambda_f0").get<std::string>());
  pair.h_floor_ = parse_double(j.at("h_floor").get<std::string>());

  pair.lambda_.resize(n_phi, n_s);
  std::ifstream csv(csv_path, std::ios::binary);
  if (!csv) throw std::runtime_error("NullPair2D::load: cannot open " + csv_path);
  std::string line, tok;
  for (int jrow = 0; jrow < n_phi; ++jrow) {
    if (!std::getline(csv, line)) throw std::runtime_error("NullPair2D::load: truncated csv");
    std::stringstream row(line);
    for (int i = 0; i < n_s; ++i) {
      if (!std::getline(row, tok, ',')) throw std::runtime_error("NullPair2D::load: short row");
      pair.lambda_(jrow, i) = parse_double(tok);
    }
  }
  return pair;
}

LiftedPair lift_to_dimension(std::shared_ptr<const NullPair2D> pair, int d) {
  if (!pair) throw std::invalid_argument("lift_to_dimension: null pair");
  if (d < 3) throw std::invalid_argument("lift_to_dimension: requires d >= 3");

  // Certify a global envelope for the weight: off the family nodes the
  // interpolated lambda overshoots the family-realized band a little, and a
  // too-coarse family can even lose positivity. Declared bounds are the
  // sampled envelope with a pad; the family-realized bounds stay recorded on
  // the pair itself.
  double lo = pair->weight_min();
  double hi = pair->weight_max();
  {
    Rng rng(0x5eedff);
    const double r = 2.0 * pair->family().radius;
    for (int i = 0; i < 200000; ++i) {
      const Eigen::Vector2d x(rng.uniform(-r, r), rng.uniform(-r, r));
      Eigen::Vector2d dir(1.0, 0.0);
      if (i % 4 != 0) {
        const double a = rng.uniform(0.0, 2.0 * M_PI);
        dir << std::cos(a), std::sin(a);
      }
      const double v = pair->eval_w0(x, dir);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!(lo > 0.0)) {
    throw WeightBoundViolation(
        "lift_to_dimension: interpolated weight is not strictly positive off "
        "the family (family resolution too coarse for this f0)",
        lo);
  }
  // Sampling underestimates the true envelope; pad it and give the policy
  // check the same allowance.
  const double pad = 0.02 * (hi - lo);
  const double lower = std::max(lo - pad, 0.5 * lo);
  const double upper = hi + pad;

  RayWeight w(
      [pair](const Vec& x, const Direction& a) {
        const double p2 = std::hypot(a[0], a[1]);
        Eigen::Vector2d dir;
        if (p2 <= kDegeneracyTol) {
          dir << 1.0, 0.0;  // degenerate extension, same as the plane weight
        } else {
          dir << a[0] / p2, a[1] / p2;
        }
        return pair->eval_w0(Eigen::Vector2d(x[0], x[1]), dir);
      },
      lower, upper);

  auto policy = [pair](const Vec& x) {
    return pair->eval_w0(Eigen::Vector2d(x[0], x[1]), Eigen::Vector2d(1.0, 0.0));
  };
  // The check below is a sanity net against gross violations; empirical sup
  // estimates of the same slice from two samplers can differ by a few
  // percent, so it gets a tenth of the span as allowance.
  WeightSamplingOptions sampling;
  sampling.slack = 0.1 * (upper - lower);
  RadonWeight W = weight_from_ray_weight(w, policy, d, sampling);

  ScalarField f = lift_field(pair->f0(), bump_psi(d - 2), d);
  return LiftedPair{d, std::move(pair), std::move(w), std::move(W), std::move(f)};
}

ResidualReport verify_null_pair_2d(const NullPair2D& pair, int offgrid_lines,
                                   std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  const LineFamily2D& family = pair.family();
  const LineRule& rule = family.rule;
  ResidualReport report;
  report.kind = "null-pair-2d";
  report.weight_min = pair.weight_min();
  report.weight_max = pair.weight_max();

  double gmax = 0.0;
  Eigen::Vector2d x, dir;
  Vec p(2);
  for (int jphi = 0; jphi < family.n_phi(); ++jphi) {
    const double phi = family.angles[jphi];
    const double nx = std::cos(phi), ny = std::sin(phi);
    dir << -ny, nx;
    for (int is = 0; is < family.n_s(); ++is) {
      const double s = family.offsets[is];
      // w0 on a family line carries the table lambda by construction; the
      // interpolant's node accuracy and the coordinate recovery of eval_w0
      // are checked separately on random lines.
      const double lambda = pair.lambda_table()(jphi, is);
      const double rescale = pair.rescale_factor();
      double acc = 0.0, norm = 0.0, energy = 0.0;
      for (int k = 0; k < rule.size(); ++k) {
        const double t = rule.nodes[k];
        x << s * nx + t * dir.x(), s * ny + t * dir.y();
        p << x.x(), x.y();
        const double fv = pair.f0()(p);
        if (fv == 0.0) continue;
        acc += rule.weights[k] * rescale * (1.0 - lambda * fv) * fv;
        norm += rule.weights[k] * std::abs(fv);
        energy += rule.weights[k] * fv * fv;
      }
      gmax = std::max(gmax, norm);
      ResidualRecord rec;
      rec.s = s;
      rec.theta = {nx, ny};
      // Lines below the energy floor carry no lambda; the construction
      // imposes no equation there. Their raw residual is Cauchy-Schwarz
      // bounded by sqrt(2 radius h_floor); report it unnormalized under a
      // separate tag.
      if (energy > pair.h_floor()) {
        rec.value = norm > 0.0 ? acc / norm : 0.0;
        rec.path = "family";
      } else {
        rec.value = acc;
        rec.path = "family-floored";
      }
      report.records.push_back(std::move(rec));
    }
  }

  Rng rng(seed);
  for (int l = 0; l < offgrid_lines; ++l) {
    const double s = rng.uniform(-family.radius, family.radius);
    const double phi = rng.uniform(0.0, M_PI);
    const double nx = std::cos(phi), ny = std::sin(phi);
    dir << -ny, nx;
    double acc = 0.0;
    for (int k = 0; k < rule.size(); ++k) {
      const double t = rule.nodes[k];
      x << s * nx + t * dir.x(), s * ny + t * dir.y();
      p << x.x(), x.y();
      const double fv = pair.f0()(p);
      if (fv == 0.0) continue;
      acc += rule.weights[k] * pair.eval_w0(x, dir) * fv;
    }
    ResidualRecord rec;
    rec.s = s;
    rec.theta = {nx, ny};
    rec.value = acc;
    rec.path = "offgrid";
    report.records.push_back(std::move(rec));
  }

  report.normalization = gmax;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

ResidualReport verify_lifted_pair(const LiftedPair& lp,
                                  const std::vector<Hyperplane>& planes,
                                  VerifyMode mode,
                                  const LiftedVerifyOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  const int d = lp.dim;
  const double R = lp.f.support_radius();

  ResidualReport report;
  report.kind = mode == VerifyMode::reduction ? "lift-reduction" : "lift-direct";
  report.weight_min = lp.W.lower_bound();
  report.weight_max = lp.W.upper_bound();

  const ScalarField absf = abs_field(lp.f);
  const RayWeight unit_ray([](const Vec&, const Direction&) { return 1.0; }, 1.0, 1.0);
  const RadonWeight unit_plane([](const Vec&, const Direction&) { return 1.0; }, 1.0, 1.0);

  const FiberRule fiber = FiberRule::uniform(d - 2, options.fiber_nodes, R);
  const LineRule line =
      options.line_nodes > 0
          ? gauss_legendre_rule(options.line_nodes,
                                lp.base->family().rule.truncation_radius)
          : lp.base->family().rule;
  const HyperplaneRule direct_rule =
      HyperplaneRule::uniform(d, options.direct_nodes_per_axis, R);

  double norm = 0.0;
  for (const Hyperplane& plane : planes) {
    const bool degenerate = is_degenerate(plane.normal);
    ResidualRecord rec;
    rec.s = plane.offset;
    rec.theta.assign(plane.normal.vec().data(),
                     plane.normal.vec().data() + d);
    if (mode == VerifyMode::reduction) {
      if (degenerate) continue;  // the decomposition needs alpha(theta)
      const Frame frame = frame_on_hyperplane(plane.normal, options.frame_seed);
      rec.value = radon_via_rays(lp.w, lp.f, plane, frame, fiber, line);
      norm = std::max(norm,
                      std::abs(radon_via_rays(unit_ray, absf, plane, frame, fiber, line)));
      rec.path = "reduction";
    } else {
      rec.value = radon_direct(lp.W, lp.f, plane, direct_rule);
      norm = std::max(norm, std::abs(radon_direct(unit_plane, absf, plane, direct_rule)));
      rec.path = degenerate ? "direct-degenerate" : "direct";
    }
    report.records.push_back(std::move(rec));
  }
  report.normalization = norm;
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace wradon
