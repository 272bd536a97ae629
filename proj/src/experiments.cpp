#include "jury/experiments.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <string>
#include <thread>

#include "jury/errors.hpp"

namespace jury {
namespace {

std::vector<double> tenth_steps(int first, int last) {
  std::vector<double> grid;
  for (int i = first; i <= last; ++i) grid.push_back(i / 10.0);
  return grid;
}

void validate_grid(const std::vector<double>& grid, const char* field, double lo, double hi) {
  if (grid.empty()) throw ConfigError(std::string("config field '") + field + "' must not be empty");
  for (double v : grid) {
    if (!(v >= lo && v <= hi)) {
      throw ConfigError(std::string("config field '") + field + "' values must lie in [" +
                        std::to_string(lo) + "," + std::to_string(hi) + "], got " +
                        std::to_string(v));
    }
  }
}

void validate_sigma_set(const std::vector<double>& set, const char* field) {
  if (set.empty()) throw ConfigError(std::string("config field '") + field + "' must not be empty");
  for (double v : set) {
    if (!(v > 0.0)) {
      throw ConfigError(std::string("config field '") + field + "' values must be > 0, got " +
                        std::to_string(v));
    }
  }
}

void validate_bounds(double lo, double hi, const char* lo_field, const char* hi_field) {
  if (!(lo >= 0.0 && hi <= 1.0 && lo < hi)) {
    throw ConfigError(std::string("config fields '") + lo_field + "'/'" + hi_field +
                      "' must satisfy 0 <= lo < hi <= 1, got [" + std::to_string(lo) + "," +
                      std::to_string(hi) + "]");
  }
}

// Runs body(0..count-1) on up to `threads` workers. Each cell owns its own
// derived rng, so scheduling cannot change results; errors are rethrown for
// the lowest failing cell index to keep failures deterministic too.
void run_cells(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
  int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  if (static_cast<std::size_t>(workers) > count) workers = static_cast<int>(count);

  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          body(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }
}

std::string cell_name(double sigma_e, double mu_e, double p1, std::optional<double> p2) {
  std::string s = "cell (sigma_E=" + std::to_string(sigma_e) + ", mu_E=" + std::to_string(mu_e);
  s += p2 ? ", mu_J=" + std::to_string(p1) + ", sigma_J=" + std::to_string(*p2)
          : ", p_j=" + std::to_string(p1);
  return s + ")";
}

}  // namespace

CellStats cell_accuracy(const TruncatedNormalSpec& expert_spec, int expert_count,
                        const JudgeSource& judges, WeightPolicy policy,
                        EvaluationMode mode, ZeroWeightFallback fallback,
                        long trials, const RandomStream& rng) {
  if (expert_count < 1) throw InputError("expert count must be >= 1");
  if (trials < 1) throw InputError("trials must be >= 1");

  CompensatedSum sum;
  CompensatedSum sum_sq;
  for (long t = 0; t < trials; ++t) {
    const RandomStream trial = rng.derive(static_cast<std::uint64_t>(t));

    RandomStream expert_rng = trial.derive(0);
    const CompetencePanel experts = sample_panel(expert_count, expert_spec, expert_rng);

    CompetencePanel judge_panel;
    if (const auto* fixed = std::get_if<FixedJudge>(&judges)) {
      judge_panel.probs = {fixed->competence};
    } else {
      const auto& sampled = std::get<SampledJudges>(judges);
      RandomStream judge_rng = trial.derive(1);
      judge_panel = sample_panel(sampled.count, sampled.spec, judge_rng);
    }

    const WeightVector weights =
        aggregate(apply_policy(score_matrix(judge_panel, experts), policy));

    double x;
    if (mode == EvaluationMode::ExactPerPanel) {
      x = exact_accuracy(experts, weights, fallback);
    } else {
      RandomStream vote_rng = trial.derive(2);
      x = simulate_accuracy(experts, weights, 1, vote_rng, fallback);
    }
    sum.add(x);
    sum_sq.add(x * x);
  }

  const double n = static_cast<double>(trials);
  const double mean = sum.value() / n;
  double variance = 0.0;
  if (trials > 1) {
    variance = std::max(0.0, (sum_sq.value() - n * mean * mean) / (n - 1.0));
  }
  return CellStats{mean, std::sqrt(variance / n), trials};
}

SweepConfig resolve_defaults(const SweepConfig& config) {
  SweepConfig c = config;
  if (c.expert_mu_grid.empty()) c.expert_mu_grid = tenth_steps(1, 9);
  if (c.expert_sigma_set.empty()) {
    c.expert_sigma_set = c.judge_count == 1 ? std::vector<double>{0.1, 0.2, 0.3, 0.4}
                                            : std::vector<double>{0.1, 0.4};
  }
  if (c.judge_count == 1) {
    if (c.judge_grid.empty()) c.judge_grid = tenth_steps(1, 10);
  } else {
    if (c.judge_mu_grid.empty()) c.judge_mu_grid = tenth_steps(1, 9);
    if (c.judge_sigma_set.empty()) c.judge_sigma_set = {0.1, 0.4};
  }

  if (c.expert_count < 1) throw ConfigError("config field 'expert_count' must be >= 1");
  if (c.mode == EvaluationMode::ExactPerPanel && c.expert_count > kMaxEnumerationExperts) {
    throw ConfigError("config field 'expert_count' must be <= " +
                      std::to_string(kMaxEnumerationExperts) + " in exact mode");
  }
  if (c.judge_count < 1) throw ConfigError("config field 'judge_count' must be >= 1");
  if (c.trials < 1) throw ConfigError("config field 'trials' must be >= 1");
  validate_grid(c.expert_mu_grid, "expert_mu_grid", 0.0, 1.0);
  validate_sigma_set(c.expert_sigma_set, "expert_sigma_set");
  validate_bounds(c.expert_lo, c.expert_hi, "expert_lo", "expert_hi");
  if (c.judge_count == 1) {
    validate_grid(c.judge_grid, "judge_grid", 0.0, 1.0);
  } else {
    validate_grid(c.judge_mu_grid, "judge_mu_grid", 0.0, 1.0);
    validate_sigma_set(c.judge_sigma_set, "judge_sigma_set");
    validate_bounds(c.judge_lo, c.judge_hi, "judge_lo", "judge_hi");
  }
  return c;
}

SweepConfig default_single_judge_config() {
  return resolve_defaults(SweepConfig{});
}

SweepConfig default_multi_judge_config(WeightPolicy policy) {
  SweepConfig c;
  c.judge_count = 10;
  c.policy = policy;
  return resolve_defaults(c);
}

SweepResult single_judge_sweep(const SweepConfig& config, int threads) {
  const SweepConfig c = resolve_defaults(config);
  if (c.judge_count != 1) {
    throw ConfigError("config field 'judge_count' must be 1 for a single-judge sweep");
  }

  struct Cell {
    double sigma_e, mu_e, p_j;
  };
  std::vector<Cell> cells;
  for (double sigma_e : c.expert_sigma_set) {
    for (double mu_e : c.expert_mu_grid) {
      for (double p_j : c.judge_grid) cells.push_back({sigma_e, mu_e, p_j});
    }
  }

  SweepResult result;
  result.cells.resize(cells.size());
  const RandomStream master(c.master_seed);
  run_cells(cells.size(), threads, [&](std::size_t i) {
    const Cell& cell = cells[i];
    const TruncatedNormalSpec expert_spec{cell.mu_e, cell.sigma_e, c.expert_lo, c.expert_hi};
    try {
      const CellStats stats =
          cell_accuracy(expert_spec, c.expert_count, FixedJudge{cell.p_j}, c.policy, c.mode,
                        c.fallback, c.trials, master.derive(i));
      result.cells[i] = CellRecord{cell.sigma_e, cell.mu_e,  cell.p_j,
                                   std::nullopt, c.policy,   c.mode,
                                   c.trials,     c.master_seed, stats.mean,
                                   stats.std_error};
    } catch (const SamplingError& e) {
      throw SamplingError(cell_name(cell.sigma_e, cell.mu_e, cell.p_j, std::nullopt) + ": " +
                          e.what());
    }
  });
  return result;
}

SweepResult multi_judge_sweep(const SweepConfig& config, int threads) {
  const SweepConfig c = resolve_defaults(config);
  if (c.judge_count < 2) {
    throw ConfigError("config field 'judge_count' must be >= 2 for a multi-judge sweep");
  }

  struct Cell {
    double sigma_e, mu_e, mu_j, sigma_j;
  };
  std::vector<Cell> cells;
  for (double sigma_e : c.expert_sigma_set) {
    for (double mu_e : c.expert_mu_grid) {
      for (double mu_j : c.judge_mu_grid) {
        for (double sigma_j : c.judge_sigma_set) cells.push_back({sigma_e, mu_e, mu_j, sigma_j});
      }
    }
  }

  SweepResult result;
  result.cells.resize(cells.size());
  const RandomStream master(c.master_seed);
  run_cells(cells.size(), threads, [&](std::size_t i) {
    const Cell& cell = cells[i];
    const TruncatedNormalSpec expert_spec{cell.mu_e, cell.sigma_e, c.expert_lo, c.expert_hi};
    const TruncatedNormalSpec judge_spec{cell.mu_j, cell.sigma_j, c.judge_lo, c.judge_hi};
    try {
      const CellStats stats =
          cell_accuracy(expert_spec, c.expert_count, SampledJudges{judge_spec, c.judge_count},
                        c.policy, c.mode, c.fallback, c.trials, master.derive(i));
      result.cells[i] = CellRecord{cell.sigma_e, cell.mu_e, cell.mu_j,
                                   cell.sigma_j, c.policy,  c.mode,
                                   c.trials,     c.master_seed, stats.mean,
                                   stats.std_error};
    } catch (const SamplingError& e) {
      throw SamplingError(cell_name(cell.sigma_e, cell.mu_e, cell.mu_j, cell.sigma_j) + ": " +
                          e.what());
    }
  });
  return result;
}

std::vector<CurvePoint> judge_curve(const CompetencePanel& panel, int resolution,
                                    ZeroWeightFallback fallback) {
  if (resolution < 2) throw InputError("curve resolution must be >= 2");
  std::vector<CurvePoint> curve;
  curve.reserve(resolution);
  for (int i = 0; i < resolution; ++i) {
    const double p_j = static_cast<double>(i) / static_cast<double>(resolution - 1);
    const WeightVector weights{judge_scores(p_j, panel)};
    curve.push_back({p_j, exact_accuracy(panel, weights, fallback)});
  }
  return curve;
}

}  // namespace jury
