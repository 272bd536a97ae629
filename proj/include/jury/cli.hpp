#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "jury/experiments.hpp"

namespace jury::cli {

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// Flat key=value file: one pair per line, '#' comments, blank lines ignored.
// Manifests use the same syntax, so they feed straight back into --config.
KeyValues load_key_values(const std::string& path);

std::string policy_name(WeightPolicy policy);
WeightPolicy parse_policy(const std::string& text);
std::string mode_name(EvaluationMode mode);
EvaluationMode parse_mode(const std::string& text);
std::string fallback_name(ZeroWeightFallback fallback);
ZeroWeightFallback parse_fallback(const std::string& text);

std::vector<double> parse_double_list(const std::string& text, const std::string& field);

// Flag values that take precedence over the config file.
struct SweepOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<long> trials;
  std::optional<WeightPolicy> policy;
  std::optional<EvaluationMode> mode;
  std::optional<ZeroWeightFallback> fallback;
  std::optional<int> judge_count;
};

// Fully resolved sweep config: built-in defaults, then the JURY_SEED env
// default, then the config file, then flag overrides; grid defaults filled
// last according to judge_count.
SweepConfig resolve_sweep_config(const std::optional<std::string>& config_path,
                                 const SweepOverrides& overrides,
                                 std::optional<std::uint64_t> env_seed);

void write_sweep_csv(std::ostream& os, const SweepResult& result);

// Manifest body for a sweep run; `config` must already be resolved.
std::string sweep_manifest(const SweepConfig& config, const std::string& out_path);

struct CurveOptions {
  std::vector<double> panel = {0.6, 0.6, 0.6, 0.7, 0.9};
  int resolution = 101;
  ZeroWeightFallback fallback = ZeroWeightFallback::EqualWeights;
  std::string out = "curve.csv";
};

struct CurveOverrides {
  std::optional<std::vector<double>> panel;
  std::optional<int> resolution;
  std::optional<ZeroWeightFallback> fallback;
  std::optional<std::string> out;
};

CurveOptions resolve_curve_options(const std::optional<std::string>& config_path,
                                   const CurveOverrides& overrides);

struct CheckOptions {
  std::string suite = "all";  // all | theorem1 | corollary1 | negation | optimality
  double epsilon = 1e-9;
  double optimality_epsilon = 1e-12;
  long cases = 1000;
  long optimality_panels = 200;
  long optimality_challengers = 50;
  std::uint64_t seed = 7;
};

// Worked five-expert example with self-checked values; nonzero exit on any
// deviation from the expected numbers.
int cmd_example1(bool weights_only, std::ostream& out);

// Writes the single-judge accuracy curve CSV plus its manifest.
int cmd_curve(const CurveOptions& options, std::ostream& log);

// Runs the sweep matching `config` (single- or multi-judge by judge_count)
// and writes CSV plus manifest.
int cmd_sweep(const SweepConfig& config, const std::string& out_path, int threads,
              std::ostream& log);

// Runs the property suites; prints one summary line per suite.
int cmd_check(const CheckOptions& options, std::ostream& out);

}  // namespace jury::cli
