#include "wradon/experiment.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace wradon {

namespace {

namespace fs = std::filesystem;

void ensure_out_dir(const std::string& dir) {
  if (!dir.empty()) fs::create_directories(dir);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << text;
}

void emit(const ExperimentConfig& cfg, const ResidualReport& report,
          const std::string& stem) {
  if (cfg.out_dir.empty()) return;
  ensure_out_dir(cfg.out_dir);
  report.save_csv(cfg.out_dir + "/" + stem + ".csv");
  write_text(cfg.out_dir + "/" + stem + ".json", report.summary_json() + "\n");
}

double closed_form_radon_gaussian(int d, double s) {
  return std::pow(M_PI, 0.5 * (d - 1)) * std::exp(-s * s);
}

/// Smooth, strictly positive, separable test weight on rays.
RayWeight separable_test_weight(int dim) {
  Vec u(dim), v(dim);
  for (int i = 0; i < dim; ++i) {
    u[i] = 0.3 + 0.1 * i;
    v[i] = (i % 2 == 0) ? 0.5 : -0.25;
  }
  v /= v.norm();
  const Vec uc = u, vc = v;
  return RayWeight(
      [uc, vc](const Vec& x, const Direction& a) {
        return (1.0 + 0.25 * std::sin(x.dot(uc))) * (1.0 + 0.25 * a.vec().dot(vc));
      },
      0.5, 1.6);
}

}  // namespace

Direction random_nondegenerate_direction(int dim, Rng& rng, double min_proj) {
  for (;;) {
    Vec v = rng.normal_vector(dim);
    const double n = v.norm();
    if (n < 1e-8) continue;
    v /= n;
    if (dim >= 3 && std::hypot(v[0], v[1]) < min_proj) continue;
    return Direction(std::move(v));
  }
}

std::vector<Direction> theta_sample(int dim, int count, std::uint64_t seed,
                                    bool include_specials) {
  std::vector<Direction> out;
  Rng rng(seed);
  for (int i = 0; i < count; ++i) {
    out.push_back(random_nondegenerate_direction(dim, rng));
  }
  if (include_specials && dim >= 3) {
    for (int i = 0; i < 3; ++i) {
      out.push_back(basis_direction(dim, i));
      out.push_back(-basis_direction(dim, i));
    }
    // exactly degenerate samples: zero projection onto span(e1, e2)
    for (int k = 0; k < 2; ++k) {
      Vec v = Vec::Zero(dim);
      if (dim == 3) {
        v[2] = k == 0 ? 1.0 : -1.0;
      } else {
        Rng drng(seed + 17 + k);
        for (int i = 2; i < dim; ++i) v[i] = drng.normal();
        v /= v.norm();
      }
      out.push_back(Direction(std::move(v)));
    }
    // near-degenerate (just above the tolerance)
    Vec v = Vec::Zero(dim);
    v[0] = 1e-6;
    v[2] = std::sqrt(1.0 - 1e-12);
    out.push_back(Direction::normalized(std::move(v)));
  }
  return out;
}

void ExperimentConfig::validate() const {
  if (dim < 2 || dim > 6) throw UsageError("config: dim must be in [2, 6]");
  if (samples < 2 || quad_nodes < 2 || family_resolution < 2 ||
      family_s_multiplier < 1 || family_line_nodes < 2 || n_offsets < 2 ||
      n_theta < 2 || fiber_nodes < 2 || line_nodes < 2 || offgrid_lines < 2) {
    throw UsageError("config: all sizes must be >= 2");
  }
  if (tolerance < 0.0) throw UsageError("config: tolerance must be positive");
  if (mode != "both" && mode != "reduction" && mode != "direct") {
    throw UsageError("config: mode must be reduction, direct or both");
  }
}

std::string ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["dim"] = dim;
  j["seed"] = seed;
  j["out_dir"] = out_dir;
  j["samples"] = samples;
  j["quad_nodes"] = quad_nodes;
  j["tolerance"] = tolerance;
  j["family_resolution"] = family_resolution;
  j["family_s_multiplier"] = family_s_multiplier;
  j["family_line_nodes"] = family_line_nodes;
  j["n_offsets"] = n_offsets;
  j["n_theta"] = n_theta;
  j["fiber_nodes"] = fiber_nodes;
  j["line_nodes"] = line_nodes;
  j["offgrid_lines"] = offgrid_lines;
  j["unbalanced_f0"] = unbalanced_f0;
  j["mode"] = mode;
  return j.dump(2);
}

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  ExperimentConfig cfg;
  auto get = [&j](const char* key, auto& field) {
    if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
  };
  get("dim", cfg.dim);
  get("seed", cfg.seed);
  get("out_dir", cfg.out_dir);
  get("samples", cfg.samples);
  get("quad_nodes", cfg.quad_nodes);
  get("tolerance", cfg.tolerance);
  get("family_resolution", cfg.family_resolution);
  get("family_s_multiplier", cfg.family_s_multiplier);
  get("family_line_nodes", cfg.family_line_nodes);
  get("n_offsets", cfg.n_offsets);
  get("n_theta", cfg.n_theta);
  get("fiber_nodes", cfg.fiber_nodes);
  get("line_nodes", cfg.line_nodes);
  get("offgrid_lines", cfg.offgrid_lines);
  get("unbalanced_f0", cfg.unbalanced_f0);
  get("mode", cfg.mode);
  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open config file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

CommandResult run_verify_reduction(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.dim < 3) throw UsageError("verify-reduction: requires dim >= 3");
  const double tol = cfg.tolerance > 0.0 ? cfg.tolerance : 1e-8;
  const auto t0 = std::chrono::steady_clock::now();

  const int d = cfg.dim;
  const double R = 6.0;
  const ScalarField f = gaussian_oracle(d, R);
  const RayWeight w1([](const Vec&, const Direction&) { return 1.0; }, 1.0, 1.0);
  const RayWeight ws = separable_test_weight(d);
  const RadonWeight W1 = weight_from_ray_weight(
      w1, [](const Vec&) { return 1.0; }, d, {.samples = 1000});
  const RadonWeight Ws = weight_from_ray_weight(
      ws,
      [&ws, d](const Vec& x) { return ws(x, basis_direction(d, 0)); }, d,
      {.samples = 1000});

  const HyperplaneRule direct_rule = HyperplaneRule::uniform(d, cfg.quad_nodes, R);
  const FiberRule fiber = FiberRule::uniform(d - 2, cfg.quad_nodes, R);
  const LineRule line = gauss_legendre_rule(cfg.quad_nodes, R);

  ResidualReport report;
  report.kind = "verify-reduction";
  report.normalization = 1.0;
  Rng rng(cfg.seed);
  double worst = 0.0;
  for (int i = 0; i < cfg.samples; ++i) {
    const double s = rng.uniform(-2.0, 2.0);
    const Direction theta = random_nondegenerate_direction(d, rng);
    const Hyperplane plane(s, theta);
    const Frame frame = frame_on_hyperplane(theta, 0);

    struct Case {
      const RayWeight* w;
      const RadonWeight* W;
      const char* tag;
    } cases[] = {{&w1, &W1, "w1"}, {&ws, &Ws, "separable"}};
    for (const auto& c : cases) {
      const double direct = radon_direct(*c.W, f, plane, direct_rule);
      const double viarays = radon_via_rays(*c.w, f, plane, frame, fiber, line);
      const double rel = std::abs(viarays - direct) / (1.0 + std::abs(direct));
      worst = std::max(worst, rel);
      ResidualRecord rec;
      rec.s = s;
      rec.theta.assign(theta.vec().data(), theta.vec().data() + d);
      rec.value = rel;
      rec.path = c.tag;
      report.records.push_back(std::move(rec));
    }
    if (i % 4 == 0) {
      // frame-choice invariance of the decomposition
      const Frame alt = frame_on_hyperplane(theta, cfg.seed + 1);
      const double a = radon_via_rays(ws, f, plane, frame, fiber, line);
      const double b = radon_via_rays(ws, f, plane, alt, fiber, line);
      const double rel = std::abs(a - b) / (1.0 + std::abs(a));
      worst = std::max(worst, rel);
      ResidualRecord rec;
      rec.s = s;
      rec.theta.assign(theta.vec().data(), theta.vec().data() + d);
      rec.value = rel;
      rec.path = "frame-invariance";
      report.records.push_back(std::move(rec));
    }
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  emit(cfg, report, "verify_reduction");
  CommandResult result;
  result.exit_code = worst <= tol ? kExitOk : kExitToleranceBreach;
  result.reports.push_back(std::move(report));
  std::ostringstream os;
  os << "verify-reduction d=" << d << ": max relative cross-path disagreement "
     << format_double(worst) << " (tolerance " << format_double(tol) << ")";
  result.text = os.str();
  return result;
}

CommandResult run_null_pair(const ExperimentConfig& cfg) {
  cfg.validate();
  const double tol = cfg.tolerance > 0.0 ? cfg.tolerance : 1e-13;
  CommandResult result;

  const ScalarField f0 = cfg.unbalanced_f0 ? radial_ring_field() : default_f0();
  const LineFamily2D family = LineFamily2D::uniform(
      cfg.family_resolution, cfg.family_s_multiplier * cfg.family_resolution,
      f0.support_radius(), cfg.family_line_nodes);

  NullPair2D pair = build_null_pair_2d(f0, family);  // may throw
  ResidualReport report = verify_null_pair_2d(pair, cfg.offgrid_lines, cfg.seed);

  double family_max = 0.0, offgrid_max = 0.0;
  for (const auto& rec : report.records) {
    if (rec.path == "family") family_max = std::max(family_max, std::abs(rec.value));
    else offgrid_max = std::max(offgrid_max, std::abs(rec.value));
  }
  const double offgrid_rel = offgrid_max / report.normalization;

  if (!cfg.out_dir.empty()) {
    ensure_out_dir(cfg.out_dir);
    pair.save(cfg.out_dir + "/null_pair.json", cfg.out_dir + "/null_pair_lambda.csv");
  }
  emit(cfg, report, "null_pair_report");

  result.exit_code = family_max <= tol ? kExitOk : kExitToleranceBreach;
  std::ostringstream os;
  os << "null-pair: family " << family.n_phi() << "x" << family.n_s()
     << ", max per-line normalized residual " << format_double(family_max)
     << " (tolerance " << format_double(tol) << "), off-family relative residual "
     << format_double(offgrid_rel) << ", weight in ["
     << format_double(pair.weight_min()) << ", " << format_double(pair.weight_max())
     << "], sup|lambda f0| " << format_double(pair.sup_lambda_f0());
  result.text = os.str();
  result.reports.push_back(std::move(report));
  return result;
}

namespace {

std::vector<Hyperplane> lift_grid(const ExperimentConfig& cfg, double radius) {
  std::vector<Hyperplane> planes;
  const std::vector<Direction> thetas = theta_sample(cfg.dim, cfg.n_theta, cfg.seed);
  for (int i = 0; i < cfg.n_offsets; ++i) {
    const double s = radius * static_cast<double>(2 * i - (cfg.n_offsets - 1)) /
                     static_cast<double>(cfg.n_offsets - 1);
    for (const Direction& theta : thetas) planes.emplace_back(s, theta);
  }
  return planes;
}

}  // namespace

CommandResult run_lift_verify(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.dim < 3) throw UsageError("lift-verify: requires dim >= 3");
  const double tol_reduction = cfg.tolerance > 0.0 ? cfg.tolerance : 1e-4;
  const double tol_direct = cfg.tolerance > 0.0 ? cfg.tolerance : 1e-3;

  const ScalarField f0 = default_f0();
  const LineFamily2D family = LineFamily2D::uniform(
      cfg.family_resolution, cfg.family_s_multiplier * cfg.family_resolution,
      f0.support_radius(), cfg.family_line_nodes);
  auto pair = std::make_shared<const NullPair2D>(build_null_pair_2d(f0, family));
  const LiftedPair lifted = lift_to_dimension(pair, cfg.dim);

  const std::vector<Hyperplane> planes = lift_grid(cfg, lifted.f.support_radius());
  LiftedVerifyOptions options;
  options.fiber_nodes = cfg.fiber_nodes;
  options.line_nodes = cfg.line_nodes;
  options.direct_nodes_per_axis = cfg.quad_nodes;

  CommandResult result;
  std::ostringstream os;
  os << "lift-verify d=" << cfg.dim << " (family " << family.n_phi() << "x"
     << family.n_s() << "):";
  bool breach = false;
  if (cfg.mode == "reduction" || cfg.mode == "both") {
    ResidualReport r = verify_lifted_pair(lifted, planes, VerifyMode::reduction, options);
    const double rel = r.normalized_max();
    breach = breach || rel > tol_reduction;
    os << " reduction normalized max " << format_double(rel) << " (tol "
       << format_double(tol_reduction) << ");";
    emit(cfg, r, "lift_reduction");
    result.reports.push_back(std::move(r));
  }
  if (cfg.mode == "direct" || cfg.mode == "both") {
    ResidualReport r = verify_lifted_pair(lifted, planes, VerifyMode::direct, options);
    const double rel = r.normalized_max();
    breach = breach || rel > tol_direct;
    os << " direct normalized max " << format_double(rel) << " (tol "
       << format_double(tol_direct) << ");";
    emit(cfg, r, "lift_direct");
    result.reports.push_back(std::move(r));
  }
  os << " weight in [" << format_double(lifted.W.lower_bound()) << ", "
     << format_double(lifted.W.upper_bound()) << "]";
  result.exit_code = breach ? kExitToleranceBreach : kExitOk;
  result.text = os.str();
  return result;
}

CommandResult run_classify(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.dim < 3) throw UsageError("classify: requires dim >= 3");
  const std::vector<Direction> thetas = theta_sample(cfg.dim, cfg.n_theta, cfg.seed);
  const double offsets[] = {0.0, 0.5, -0.7, 1.0};

  ResidualReport report;
  report.kind = "classify";
  report.normalization = 1.0;
  std::ostringstream table;
  table << "s,kind,degenerate\n";
  int mismatches = 0;
  for (const Direction& theta : thetas) {
    const bool deg = is_degenerate(theta);
    for (double s : offsets) {
      const IntersectionKind kind = classify_intersection(Hyperplane(s, theta));
      const IntersectionKind expected =
          !deg ? IntersectionKind::Line
               : (std::abs(s) <= 1e-12 ? IntersectionKind::Plane
                                       : IntersectionKind::Empty);
      if (kind != expected) ++mismatches;
      const char* name = kind == IntersectionKind::Line
                             ? "line"
                             : (kind == IntersectionKind::Plane ? "plane" : "empty");
      table << format_double(s) << "," << name << "," << (deg ? 1 : 0) << "\n";
      ResidualRecord rec;
      rec.s = s;
      rec.theta.assign(theta.vec().data(), theta.vec().data() + cfg.dim);
      rec.value = kind == expected ? 0.0 : 1.0;
      rec.path = name;
      report.records.push_back(std::move(rec));
    }
  }
  if (!cfg.out_dir.empty()) {
    ensure_out_dir(cfg.out_dir);
    write_text(cfg.out_dir + "/classify.csv", table.str());
  }
  CommandResult result;
  result.exit_code = mismatches == 0 ? kExitOk : kExitToleranceBreach;
  result.text = "classify: " + std::to_string(report.records.size()) +
                " samples, " + std::to_string(mismatches) + " mismatches\n" +
                table.str();
  result.reports.push_back(std::move(report));
  return result;
}

CommandResult run_convergence(const ExperimentConfig& cfg) {
  cfg.validate();
  std::ostringstream csv;
  csv << "study,resolution,value\n";

  // Gaussian oracle under node doubling (d = 3).
  {
    const int d = 3;
    const ScalarField f = gaussian_oracle(d, 6.0);
    const RadonWeight W1([](const Vec&, const Direction&) { return 1.0; }, 1.0, 1.0);
    Rng rng(cfg.seed);
    std::vector<std::pair<double, Direction>> samples;
    for (int i = 0; i < 8; ++i) {
      samples.emplace_back(rng.uniform(-1.5, 1.5),
                           random_nondegenerate_direction(d, rng));
    }
    for (int n : {8, 16, 32, 64, 128}) {
      const HyperplaneRule rule = HyperplaneRule::uniform(d, n, 6.0);
      double err = 0.0;
      for (const auto& [s, theta] : samples) {
        const double got = radon_direct(W1, f, Hyperplane(s, theta), rule);
        const double want = closed_form_radon_gaussian(d, s);
        err = std::max(err, std::abs(got - want) / want);
      }
      csv << "gaussian-d3," << n << "," << format_double(err) << "\n";
    }
    // Constant-control row: the rule integrates constants exactly.
    const LineRule lr = gauss_legendre_rule(cfg.quad_nodes, 6.0);
    double wsum = 0.0;
    for (double w : lr.weights) wsum += w;
    csv << "constant-control," << cfg.quad_nodes << ","
        << format_double(std::abs(wsum - 12.0)) << "\n";
  }

  // Null-pair off-family residual under family doubling.
  {
    const ScalarField f0 = default_f0();
    for (int mult : {1, 2}) {
      const int n_phi = cfg.family_resolution * mult;
      const int nodes = cfg.family_line_nodes * (mult > 1 ? 3 : 2) / 2;
      const LineFamily2D family = LineFamily2D::uniform(
          n_phi, cfg.family_s_multiplier * n_phi, f0.support_radius(), nodes);
      const NullPair2D pair = build_null_pair_2d(f0, family);
      const ResidualReport report = verify_null_pair_2d(pair, cfg.offgrid_lines, cfg.seed);
      double offgrid = 0.0;
      for (const auto& rec : report.records) {
        if (rec.path == "offgrid") offgrid = std::max(offgrid, std::abs(rec.value));
      }
      csv << "nullpair-offgrid," << n_phi << ","
          << format_double(offgrid / report.normalization) << "\n";
    }
  }

  if (!cfg.out_dir.empty()) {
    ensure_out_dir(cfg.out_dir);
    write_text(cfg.out_dir + "/convergence.csv", csv.str());
  }
  CommandResult result;
  result.exit_code = kExitOk;
  result.text = csv.str();
  return result;
}

}  // namespace wradon
