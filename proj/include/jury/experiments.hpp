#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "jury/core.hpp"
#include "jury/sampling.hpp"
#include "jury/weighting.hpp"

namespace jury {

// How a cell turns a sampled panel + aggregated weights into a trial value:
// the exact 2^m accuracy of the realized panel, or a single simulated
// election (0/1).
enum class EvaluationMode { ExactPerPanel, SimulatedVotes };

// A cell's judges are either one judge with a fixed competence or a freshly
// sampled panel per trial.
struct FixedJudge {
  double competence = 1.0;
};
struct SampledJudges {
  TruncatedNormalSpec spec;
  int count = 10;
};
using JudgeSource = std::variant<FixedJudge, SampledJudges>;

struct CellStats {
  double mean = 0.0;
  double std_error = 0.0;
  long trials = 0;
};

// Monte Carlo estimate for one grid cell. Per trial: sample experts (and
// judges), build the score matrix, apply the policy, aggregate into weights,
// evaluate. Every trial owns the substream rng.derive(trial), so results are
// independent of iteration and thread order.
CellStats cell_accuracy(const TruncatedNormalSpec& expert_spec, int expert_count,
                        const JudgeSource& judges, WeightPolicy policy,
                        EvaluationMode mode, ZeroWeightFallback fallback,
                        long trials, const RandomStream& rng);

// Grid specification for the sweep harness. Empty grids mean "use the
// defaults for this sweep kind" (see default_single_judge_config /
// default_multi_judge_config).
struct SweepConfig {
  int expert_count = 5;
  int judge_count = 1;
  std::vector<double> expert_mu_grid;    // default 0.1 .. 0.9 step 0.1
  std::vector<double> expert_sigma_set;  // default {0.1,0.2,0.3,0.4} single, {0.1,0.4} multi
  std::vector<double> judge_grid;        // fixed p_j grid; default 0.1 .. 1.0 step 0.1
  std::vector<double> judge_mu_grid;     // sampled judges; default 0.1 .. 0.9 step 0.1
  std::vector<double> judge_sigma_set;   // default {0.1,0.4}
  double expert_lo = 0.1;
  double expert_hi = 0.9;
  double judge_lo = 0.1;
  double judge_hi = 0.9;
  WeightPolicy policy = WeightPolicy::Unrestricted;
  EvaluationMode mode = EvaluationMode::ExactPerPanel;
  ZeroWeightFallback fallback = ZeroWeightFallback::EqualWeights;
  long trials = 50000;
  std::uint64_t master_seed = 42;
};

struct CellRecord {
  double sigma_e = 0.0;
  double mu_e = 0.0;
  double judge_param1 = 0.0;                // p_j (single) or mu_J (multi)
  std::optional<double> judge_param2;       // sigma_J, empty for fixed-p_j sweeps
  WeightPolicy policy = WeightPolicy::Unrestricted;
  EvaluationMode mode = EvaluationMode::ExactPerPanel;
  long trials = 0;
  std::uint64_t seed = 0;
  double accuracy_mean = 0.0;
  double accuracy_stderr = 0.0;
};

struct SweepResult {
  std::vector<CellRecord> cells;
};

// Fills in the default grids for any grid field left empty and validates the
// result. Both sweep entry points call this; the CLI also uses it to record
// the fully resolved config in the manifest.
SweepConfig resolve_defaults(const SweepConfig& config);

SweepConfig default_single_judge_config();
SweepConfig default_multi_judge_config(WeightPolicy policy);

// One record per (sigma_E, mu_E, p_j), in lexicographic cell order, with a
// single fixed-competence judge per cell. `threads` caps parallel cells
// (0 = hardware concurrency); the result is identical for any value.
SweepResult single_judge_sweep(const SweepConfig& config, int threads = 0);

// One record per (sigma_E, mu_E, mu_J, sigma_J); judges and experts are
// resampled every trial.
SweepResult multi_judge_sweep(const SweepConfig& config, int threads = 0);

struct CurvePoint {
  double p_j = 0.0;
  double accuracy = 0.0;
};

// Exact accuracy of a fixed expert panel under a single judge's perceived
// scores, with p_j sweeping [0,1] at `resolution` points. No sampling.
std::vector<CurvePoint> judge_curve(const CompetencePanel& panel, int resolution,
                                    ZeroWeightFallback fallback = ZeroWeightFallback::EqualWeights);

}  // namespace jury
