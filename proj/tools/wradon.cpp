// Batch experiment runner: builds null pairs, evaluates weighted transforms
// over (s, theta) grids, and emits CSV/JSON reports.
//
// Exit codes: 0 success, 1 tolerance breach, 2 construction failure,
// 64 usage error.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wradon/experiment.hpp"

namespace {

using wradon::CommandResult;
using wradon::ExperimentConfig;

struct CommonFlags {
  std::string config_path;
  int dim = 0;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  double tolerance = 0.0;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON config file");
  cmd->add_option("--dim", flags.dim, "space dimension d");
  cmd->add_option("--out", flags.out_dir, "output directory for CSV/JSON reports");
  cmd->add_option("--seed", flags.seed, "random seed")->each([&flags](const std::string&) {
    flags.seed_set = true;
  });
  cmd->add_option("--tolerance", flags.tolerance, "tolerance override");
}

ExperimentConfig make_config(const CommonFlags& flags) {
  ExperimentConfig cfg;
  if (!flags.config_path.empty()) {
    cfg = ExperimentConfig::from_json_file(flags.config_path);
  }
  // Flags override the config file.
  if (flags.dim != 0) cfg.dim = flags.dim;
  if (!flags.out_dir.empty()) cfg.out_dir = flags.out_dir;
  if (flags.seed_set) cfg.seed = flags.seed;
  if (flags.tolerance != 0.0) cfg.tolerance = flags.tolerance;
  cfg.validate();
  return cfg;
}

int run(int argc, char** argv) {
  CLI::App app{"weighted Radon / ray transform experiments"};
  app.require_subcommand(1);

  CommonFlags flags;
  bool unbalanced = false;
  std::string mode;

  CLI::App* verify = app.add_subcommand(
      "verify-reduction", "cross-check hyperplane vs ray-decomposition paths");
  add_common(verify, flags);

  CLI::App* nullpair = app.add_subcommand(
      "null-pair", "build and verify the 2D annihilating pair");
  add_common(nullpair, flags);
  nullpair->add_flag("--unbalanced-f0", unbalanced,
                     "use the single-ring radial specimen (exercises the "
                     "weight-bound error path)");

  CLI::App* lift = app.add_subcommand(
      "lift-verify", "lift the pair to dimension d and verify R_W f = 0");
  add_common(lift, flags);
  lift->add_option("--mode", mode, "reduction | direct | both");

  CLI::App* classify = app.add_subcommand(
      "classify", "three-case hyperplane/plane intersection classification");
  add_common(classify, flags);

  CLI::App* convergence = app.add_subcommand(
      "convergence", "error-vs-resolution sweeps (CSV)");
  add_common(convergence, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return wradon::kExitUsage;
  }

  try {
    ExperimentConfig cfg = make_config(flags);
    CommandResult result;
    if (verify->parsed()) {
      result = wradon::run_verify_reduction(cfg);
    } else if (nullpair->parsed()) {
      cfg.unbalanced_f0 = cfg.unbalanced_f0 || unbalanced;
      result = wradon::run_null_pair(cfg);
    } else if (lift->parsed()) {
      if (!mode.empty()) cfg.mode = mode;
      result = wradon::run_lift_verify(cfg);
    } else if (classify->parsed()) {
      result = wradon::run_classify(cfg);
    } else if (convergence->parsed()) {
      result = wradon::run_convergence(cfg);
    }
    std::cout << result.text << "\n";
    return result.exit_code;
  } catch (const wradon::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return wradon::kExitUsage;
  } catch (const wradon::WeightBoundViolation& e) {
    std::cerr << "construction failure: " << e.what() << "\n";
    return wradon::kExitConstructionFailure;
  } catch (const wradon::DegenerateF0Error& e) {
    std::cerr << "construction failure: " << e.what() << "\n";
    return wradon::kExitConstructionFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
