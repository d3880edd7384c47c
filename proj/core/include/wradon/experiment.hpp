#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wradon/nullpair.hpp"
#include "wradon/rng.hpp"

namespace wradon {

/// Command line / config usage problem (maps to exit code 64).
class UsageError : public std::runtime_error {
 public:
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

// Exit code contract shared by the runners and the CLI.
inline constexpr int kExitOk = 0;
inline constexpr int kExitToleranceBreach = 1;
inline constexpr int kExitConstructionFailure = 2;
inline constexpr int kExitUsage = 64;

struct ExperimentConfig {
  int dim = 3;                    // in [2, 6]
  std::uint64_t seed = 1;
  std::string out_dir;            // empty = write nothing

  // cross-path / oracle studies
  int samples = 100;              // random (s, theta) samples
  int quad_nodes = 64;            // nodes per axis, direct quadrature
  double tolerance = 0.0;         // 0 = per-command default

  // line family for the 2D pair
  int family_resolution = 64;     // n_phi; n_s = family_s_multiplier * n_phi
  int family_s_multiplier = 16;
  int family_line_nodes = 512;

  // lifted verification grids
  int n_offsets = 8;              // hyperplane offsets over [-sqrt(2), sqrt(2)]
  int n_theta = 24;               // random directions (specials are added)
  int fiber_nodes = 64;
  int line_nodes = 512;
  int offgrid_lines = 512;

  bool unbalanced_f0 = false;     // use the single-ring radial specimen
  std::string mode = "both";      // lift-verify: reduction | direct | both

  void validate() const;
  std::string to_json() const;
  static ExperimentConfig from_json_text(const std::string& text);
  static ExperimentConfig from_json_file(const std::string& path);
};

struct CommandResult {
  int exit_code = kExitOk;
  std::vector<ResidualReport> reports;
  std::string text;  // human-readable summary printed by the CLI
};

/// Cross-path agreement study: radon_direct vs radon_via_rays on the Gaussian
/// oracle under W == 1 and a smooth separable weight, plus seed-0 vs seed-1
/// frame invariance. Tolerance default 1e-8.
CommandResult run_verify_reduction(const ExperimentConfig& config);

/// Builds the 2D pair, verifies it, exports pair artifacts and the report.
/// Family residual tolerance default 1e-13.
CommandResult run_null_pair(const ExperimentConfig& config);

/// Lifts the pair to dimension d and evaluates R_W f over a grid that covers
/// s in [-sqrt(2), sqrt(2)] and directions including +/-e1, +/-e2, +/-e3,
/// near-degenerate and exactly degenerate ones. Reduction-path tolerance
/// default 1e-4, direct-path 1e-3 (an explicit `tolerance` overrides both).
CommandResult run_lift_verify(const ExperimentConfig& config);

/// Three-case intersection classification table and its iff-condition check.
CommandResult run_classify(const ExperimentConfig& config);

/// Error-versus-resolution sweeps: the Gaussian oracle under node doubling
/// and the null-pair off-family residual under family doubling.
CommandResult run_convergence(const ExperimentConfig& config);

/// Directions used by the verification grids: `count` seeded pseudo-random
/// unit vectors plus the mandatory specials (+/-e1, +/-e2, +/-e3 for d >= 3,
/// near-degenerate and exactly degenerate directions for d >= 3).
std::vector<Direction> theta_sample(int dim, int count, std::uint64_t seed,
                                    bool include_specials = true);

/// Seeded non-degenerate direction (rejection-sampled away from the
/// degenerate set).
Direction random_nondegenerate_direction(int dim, Rng& rng, double min_proj = 1e-6);

}  // namespace wradon
