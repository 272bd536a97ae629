#include <charconv>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "jury/cli.hpp"
#include "jury/errors.hpp"
#include "jury/version.hpp"

namespace {

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("JURY_SEED");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  std::uint64_t value = 0;
  const std::string text(raw);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw jury::ConfigError("JURY_SEED must be an unsigned 64-bit integer, got '" + text + "'");
  }
  return value;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weighted majority voting with distributed judge weighting"};
  app.set_version_flag("--version", std::string("jury ") + jury::kVersion);
  app.require_subcommand(1);

  // example1
  auto* example1 = app.add_subcommand(
      "example1", "run the worked five-expert example and self-check its values");
  bool weights_only = false;
  example1->add_flag("--weights-only", weights_only,
                     "print only the optimal weights, rounded to 2 decimals");

  // curve
  auto* curve = app.add_subcommand(
      "curve", "sweep a single judge's competence over [0,1] and write the accuracy curve");
  std::string curve_panel;
  int curve_resolution = 0;
  std::string curve_out;
  std::string curve_fallback;
  std::string curve_config;
  curve->add_option("--panel", curve_panel, "comma-separated expert competences");
  curve->add_option("--resolution", curve_resolution, "number of p_j samples (>= 2)");
  curve->add_option("--out", curve_out, "output CSV path");
  curve->add_option("--zero-weight-fallback", curve_fallback,
                    "all-zero-score behavior: majority|coinflip");
  curve->add_option("--config", curve_config, "key=value config file (flags win)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run a parameter sweep and write CSV + manifest");
  std::string sweep_config;
  std::string sweep_out = "sweep.csv";
  std::uint64_t sweep_seed = 0;
  long sweep_trials = 0;
  std::string sweep_policy;
  std::string sweep_mode;
  std::string sweep_fallback;
  int sweep_judges = 0;
  int sweep_threads = 0;
  sweep->add_option("--config", sweep_config, "key=value config file (flags win)");
  sweep->add_option("--out", sweep_out, "output CSV path");
  sweep->add_option("--seed", sweep_seed, "master seed (default: JURY_SEED env or 42)");
  sweep->add_option("--trials", sweep_trials, "Monte Carlo trials per cell");
  sweep->add_option("--policy", sweep_policy, "score policy: unrestricted|nonneg|normalized");
  sweep->add_option("--mode", sweep_mode, "evaluation mode: exact|simulated");
  sweep->add_option("--zero-weight-fallback", sweep_fallback,
                    "all-zero-score behavior: majority|coinflip");
  sweep->add_option("--judges", sweep_judges, "judge count (1 = fixed-competence grid)");
  sweep->add_option("--threads", sweep_threads, "max parallel cells (0 = all cores)");

  // check
  auto* check = app.add_subcommand("check", "run the property suites");
  jury::cli::CheckOptions check_options;
  check->add_option("--suite", check_options.suite,
                    "all|theorem1|corollary1|negation|optimality");
  check->add_option("--epsilon", check_options.epsilon, "tolerance for the identity suites");
  check->add_option("--opt-epsilon", check_options.optimality_epsilon,
                    "tolerance for the optimality suite");
  check->add_option("--cases", check_options.cases, "randomized cases per identity suite");
  check->add_option("--seed", check_options.seed, "suite seed");

  try {
    app.parse(argc, argv);

    if (*example1) {
      return jury::cli::cmd_example1(weights_only, std::cout);
    }

    if (*curve) {
      jury::cli::CurveOverrides overrides;
      if (curve->count("--panel")) {
        overrides.panel = jury::cli::parse_double_list(curve_panel, "panel");
      }
      if (curve->count("--resolution")) overrides.resolution = curve_resolution;
      if (curve->count("--zero-weight-fallback")) {
        overrides.fallback = jury::cli::parse_fallback(curve_fallback);
      }
      if (curve->count("--out")) overrides.out = curve_out;
      const auto options = jury::cli::resolve_curve_options(
          curve->count("--config") ? std::optional<std::string>(curve_config) : std::nullopt,
          overrides);
      return jury::cli::cmd_curve(options, std::cout);
    }

    if (*sweep) {
      jury::cli::SweepOverrides overrides;
      if (sweep->count("--seed")) overrides.seed = sweep_seed;
      if (sweep->count("--trials")) overrides.trials = sweep_trials;
      if (sweep->count("--policy")) overrides.policy = jury::cli::parse_policy(sweep_policy);
      if (sweep->count("--mode")) overrides.mode = jury::cli::parse_mode(sweep_mode);
      if (sweep->count("--zero-weight-fallback")) {
        overrides.fallback = jury::cli::parse_fallback(sweep_fallback);
      }
      if (sweep->count("--judges")) overrides.judge_count = sweep_judges;
      const auto config = jury::cli::resolve_sweep_config(
          sweep->count("--config") ? std::optional<std::string>(sweep_config) : std::nullopt,
          overrides, env_seed());
      return jury::cli::cmd_sweep(config, sweep_out, sweep_threads, std::cout);
    }

    return jury::cli::cmd_check(check_options, std::cout);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const jury::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const jury::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
