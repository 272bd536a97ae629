#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>

#include "jury/errors.hpp"
#include "jury/experiments.hpp"

using namespace jury;

namespace {

const CompetencePanel kExamplePanel{{0.6, 0.6, 0.6, 0.7, 0.9}};

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

bool records_identical(const SweepResult& a, const SweepResult& b) {
  if (a.cells.size() != b.cells.size()) return false;
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    if (!same_bits(a.cells[i].accuracy_mean, b.cells[i].accuracy_mean)) return false;
    if (!same_bits(a.cells[i].accuracy_stderr, b.cells[i].accuracy_stderr)) return false;
    if (a.cells[i].sigma_e != b.cells[i].sigma_e) return false;
    if (a.cells[i].mu_e != b.cells[i].mu_e) return false;
    if (a.cells[i].judge_param1 != b.cells[i].judge_param1) return false;
  }
  return true;
}

double grid_mean(const SweepResult& result) {
  double sum = 0.0;
  for (const CellRecord& cell : result.cells) sum += cell.accuracy_mean;
  return sum / static_cast<double>(result.cells.size());
}

}  // namespace

TEST_CASE("judge_curve: worked example endpoints and interior") {
  const auto curve = judge_curve(kExamplePanel, 101);
  REQUIRE(curve.size() == 101);
  CHECK(curve.front().p_j == 0.0);
  CHECK(curve.back().p_j == 1.0);
  CHECK(std::abs(curve.back().accuracy - 0.9) <= 1e-9);
  CHECK(std::abs(curve.front().accuracy - 0.1) <= 1e-9);   // mirror of the optimal rule
  CHECK(std::abs(curve[60].accuracy - 0.89784) <= 1e-9);   // p_j = 0.6
  CHECK(std::abs(curve[50].accuracy - 0.81648) <= 1e-9);   // p_j = 0.5 falls back to majority
  for (const CurvePoint& point : curve) {
    CHECK(point.accuracy >= 0.0);
    CHECK(point.accuracy <= 1.0);
  }
}

TEST_CASE("judge_curve: symmetric about p_j = 0.5") {
  const auto curve = judge_curve(kExamplePanel, 101);
  for (int i = 0; i < 101; ++i) {
    if (i == 50) continue;
    CHECK(std::abs(curve[i].accuracy + curve[100 - i].accuracy - 1.0) <= 1e-9);
  }
}

TEST_CASE("judge_curve: resolution 2 and the coinflip fallback") {
  const auto two = judge_curve(kExamplePanel, 2);
  REQUIRE(two.size() == 2);
  CHECK(two[0].p_j == 0.0);
  CHECK(two[1].p_j == 1.0);

  const auto coin = judge_curve(kExamplePanel, 3, ZeroWeightFallback::CoinFlip);
  CHECK(coin[1].p_j == 0.5);
  CHECK(coin[1].accuracy == 0.5);

  CHECK_THROWS_AS(judge_curve(kExamplePanel, 1), InputError);
}

TEST_CASE("cell_accuracy: a perfect judge beats an uninformed one on common draws") {
  const TruncatedNormalSpec expert_spec{0.6, 0.2, 0.1, 0.9};
  const RandomStream rng(505);
  const long trials = 2000;
  const CellStats perfect =
      cell_accuracy(expert_spec, 5, FixedJudge{1.0}, WeightPolicy::Unrestricted,
                    EvaluationMode::ExactPerPanel, ZeroWeightFallback::EqualWeights, trials, rng);
  const CellStats uninformed =
      cell_accuracy(expert_spec, 5, FixedJudge{0.5}, WeightPolicy::Unrestricted,
                    EvaluationMode::ExactPerPanel, ZeroWeightFallback::EqualWeights, trials, rng);
  // same rng means same panels per trial, and the optimal rule is pointwise
  // at least as accurate as the equal-weight fallback
  CHECK(perfect.mean >= uninformed.mean);
  CHECK(perfect.std_error > 0.0);
}

TEST_CASE("cell_accuracy: the p_j = 1.0 cell is exactly the mean optimal-rule accuracy") {
  const TruncatedNormalSpec expert_spec{0.6, 0.3, 0.1, 0.9};
  const RandomStream rng(909);
  const long trials = 400;
  const CellStats cell =
      cell_accuracy(expert_spec, 5, FixedJudge{1.0}, WeightPolicy::Unrestricted,
                    EvaluationMode::ExactPerPanel, ZeroWeightFallback::EqualWeights, trials, rng);

  double sum = 0.0;
  for (long t = 0; t < trials; ++t) {
    RandomStream expert_rng = rng.derive(t).derive(0);
    const CompetencePanel panel = sample_panel(5, expert_spec, expert_rng);
    sum += exact_accuracy(panel, optimal_weights(panel));
  }
  CHECK(std::abs(cell.mean - sum / trials) <= 1e-12);
}

TEST_CASE("cell_accuracy: the p_j = 0.5 cell is exactly the equal-weight baseline") {
  const TruncatedNormalSpec expert_spec{0.5, 0.3, 0.1, 0.9};
  const RandomStream rng(606);
  const long trials = 500;
  const CellStats cell =
      cell_accuracy(expert_spec, 5, FixedJudge{0.5}, WeightPolicy::Unrestricted,
                    EvaluationMode::ExactPerPanel, ZeroWeightFallback::EqualWeights, trials, rng);

  double sum = 0.0;
  const WeightVector ones{std::vector<double>(5, 1.0)};
  for (long t = 0; t < trials; ++t) {
    RandomStream expert_rng = rng.derive(t).derive(0);
    const CompetencePanel panel = sample_panel(5, expert_spec, expert_rng);
    sum += exact_accuracy(panel, ones);
  }
  CHECK(std::abs(cell.mean - sum / trials) <= 1e-12);
}

TEST_CASE("cell_accuracy: a nearly-degenerate spec approaches the fixed-panel value") {
  const TruncatedNormalSpec tight{0.6, 1e-9, 0.1, 0.9};
  const RandomStream rng(707);
  const CellStats cell =
      cell_accuracy(tight, 5, FixedJudge{0.6}, WeightPolicy::Unrestricted,
                    EvaluationMode::ExactPerPanel, ZeroWeightFallback::EqualWeights, 200, rng);
  const CompetencePanel limit{std::vector<double>(5, 0.6)};
  const double reference = exact_accuracy(limit, WeightVector{judge_scores(0.6, limit)});
  CHECK(std::abs(cell.mean - reference) <= 1e-6);
}

TEST_CASE("cell_accuracy: ten near-identical judges behave like their common row") {
  const TruncatedNormalSpec expert_spec{0.6, 0.2, 0.1, 0.9};
  const RandomStream rng(808);
  const long trials = 500;
  const CellStats many =
      cell_accuracy(expert_spec, 5, SampledJudges{{0.6, 1e-9, 0.1, 0.9}, 10},
                    WeightPolicy::Unrestricted, EvaluationMode::ExactPerPanel,
                    ZeroWeightFallback::EqualWeights, trials, rng);
  const CellStats one =
      cell_accuracy(expert_spec, 5, FixedJudge{0.6}, WeightPolicy::Unrestricted,
                    EvaluationMode::ExactPerPanel, ZeroWeightFallback::EqualWeights, trials, rng);
  // same expert substreams; identical judge rows average to the single row
  CHECK(std::abs(many.mean - one.mean) <= 1e-6);
}

TEST_CASE("cell_accuracy: validation") {
  const TruncatedNormalSpec spec{0.5, 0.1, 0.1, 0.9};
  const RandomStream rng(1);
  CHECK_THROWS_AS(cell_accuracy(spec, 0, FixedJudge{0.5}, WeightPolicy::Unrestricted,
                                EvaluationMode::ExactPerPanel, ZeroWeightFallback::EqualWeights,
                                10, rng),
                  InputError);
  CHECK_THROWS_AS(cell_accuracy(spec, 5, FixedJudge{0.5}, WeightPolicy::Unrestricted,
                                EvaluationMode::ExactPerPanel, ZeroWeightFallback::EqualWeights,
                                0, rng),
                  InputError);
}

TEST_CASE("single_judge_sweep: cell layout is the lexicographic grid") {
  SweepConfig config;
  config.trials = 1;
  const SweepResult result = single_judge_sweep(config);
  REQUIRE(result.cells.size() == 360);  // 4 sigma x 9 mu x 10 p_j
  CHECK(result.cells[0].sigma_e == 0.1);
  CHECK(result.cells[0].mu_e == 0.1);
  CHECK(result.cells[0].judge_param1 == 0.1);
  CHECK_FALSE(result.cells[0].judge_param2.has_value());
  CHECK(result.cells[9].judge_param1 == 1.0);
  CHECK(result.cells[10].mu_e == doctest::Approx(0.2));
  CHECK(result.cells.back().sigma_e == 0.4);
  CHECK(result.cells.back().mu_e == 0.9);
  CHECK(result.cells.back().judge_param1 == 1.0);
  for (std::size_t i = 1; i < result.cells.size(); ++i) {
    const auto& a = result.cells[i - 1];
    const auto& b = result.cells[i];
    const bool ordered = a.sigma_e < b.sigma_e ||
                         (a.sigma_e == b.sigma_e &&
                          (a.mu_e < b.mu_e ||
                           (a.mu_e == b.mu_e && a.judge_param1 < b.judge_param1)));
    CHECK(ordered);
  }
}

TEST_CASE("multi_judge_sweep: cell layout and record fields") {
  SweepConfig config;
  config.judge_count = 10;
  config.trials = 1;
  config.policy = WeightPolicy::Normalized;
  const SweepResult result = multi_judge_sweep(config);
  REQUIRE(result.cells.size() == 324);  // 2 sigma_E x 9 mu_E x 9 mu_J x 2 sigma_J
  for (const CellRecord& cell : result.cells) {
    CHECK(cell.judge_param2.has_value());
    CHECK(cell.policy == WeightPolicy::Normalized);
    CHECK(cell.accuracy_mean >= 0.0);
    CHECK(cell.accuracy_mean <= 1.0);
  }
}

TEST_CASE("sweeps: bit-identical across thread counts") {
  SweepConfig config;
  config.expert_mu_grid = {0.3, 0.7};
  config.expert_sigma_set = {0.2};
  config.judge_grid = {0.5, 0.9};
  config.trials = 300;
  config.master_seed = 777;
  const SweepResult serial = single_judge_sweep(config, 1);
  const SweepResult parallel2 = single_judge_sweep(config, 2);
  const SweepResult parallel7 = single_judge_sweep(config, 7);
  CHECK(records_identical(serial, parallel2));
  CHECK(records_identical(serial, parallel7));

  SweepConfig multi;
  multi.judge_count = 10;
  multi.expert_mu_grid = {0.5};
  multi.expert_sigma_set = {0.4};
  multi.judge_mu_grid = {0.4, 0.8};
  multi.judge_sigma_set = {0.1};
  multi.trials = 200;
  CHECK(records_identical(multi_judge_sweep(multi, 1), multi_judge_sweep(multi, 3)));
}

TEST_CASE("sweeps: exact and simulated modes agree on a smoke grid") {
  SweepConfig config;
  config.expert_mu_grid = {0.4, 0.7};
  config.expert_sigma_set = {0.2};
  config.judge_grid = {0.8};
  config.trials = 20000;
  config.mode = EvaluationMode::ExactPerPanel;
  const SweepResult exact = single_judge_sweep(config);
  config.mode = EvaluationMode::SimulatedVotes;
  const SweepResult simulated = single_judge_sweep(config);
  REQUIRE(exact.cells.size() == simulated.cells.size());
  for (std::size_t i = 0; i < exact.cells.size(); ++i) {
    const double gap = std::abs(exact.cells[i].accuracy_mean - simulated.cells[i].accuracy_mean);
    const double combined = std::sqrt(exact.cells[i].accuracy_stderr * exact.cells[i].accuracy_stderr +
                                      simulated.cells[i].accuracy_stderr * simulated.cells[i].accuracy_stderr);
    CHECK(gap <= 3.0 * combined);
  }
}

TEST_CASE("sweeps: mirrored judge competences give complementary accuracies") {
  SweepConfig config;
  config.expert_mu_grid = {0.3, 0.6};
  config.expert_sigma_set = {0.2};
  config.judge_grid = {0.2, 0.3, 0.7, 0.8};
  config.trials = 8000;
  config.master_seed = 11;
  const SweepResult result = single_judge_sweep(config);
  int paired = 0;
  for (const CellRecord& cell : result.cells) {
    if (cell.judge_param1 >= 0.5) continue;
    for (const CellRecord& mirror : result.cells) {
      if (mirror.sigma_e == cell.sigma_e && mirror.mu_e == cell.mu_e &&
          mirror.judge_param1 == 1.0 - cell.judge_param1) {
        const double total = cell.accuracy_mean + mirror.accuracy_mean;
        const double combined =
            std::sqrt(cell.accuracy_stderr * cell.accuracy_stderr +
                      mirror.accuracy_stderr * mirror.accuracy_stderr);
        CHECK(std::abs(total - 1.0) <= 3.0 * combined);
        ++paired;
      }
    }
  }
  CHECK(paired == 4);
}

TEST_CASE("sweeps: unrestricted grid mean dominates non-negative on a reduced grid") {
  SweepConfig config;
  config.judge_count = 10;
  config.expert_mu_grid = {0.4, 0.7};
  config.expert_sigma_set = {0.4};
  config.judge_mu_grid = {0.4, 0.7};
  config.judge_sigma_set = {0.4};
  config.trials = 3000;
  config.policy = WeightPolicy::Unrestricted;
  const double unrestricted = grid_mean(multi_judge_sweep(config));
  config.policy = WeightPolicy::NonNegative;
  const double nonneg = grid_mean(multi_judge_sweep(config));
  CHECK(unrestricted >= nonneg);
}

TEST_CASE("sweeps: sampling failures name the offending cell") {
  SweepConfig config;
  config.expert_mu_grid = {0.0};
  config.expert_sigma_set = {0.0001};  // the truncation interval is ~500 sigmas away
  config.judge_grid = {0.5};
  config.trials = 5;
  try {
    single_judge_sweep(config);
    FAIL("expected SamplingError");
  } catch (const SamplingError& e) {
    const std::string message = e.what();
    CHECK(message.find("cell (sigma_E=") != std::string::npos);
    CHECK(message.find("rejection cap") != std::string::npos);
  }
}

TEST_CASE("sweep config validation names fields") {
  SweepConfig config;
  config.trials = 0;
  CHECK_THROWS_AS(single_judge_sweep(config), ConfigError);

  SweepConfig bad_mu;
  bad_mu.expert_mu_grid = {1.5};
  CHECK_THROWS_AS(single_judge_sweep(bad_mu), ConfigError);

  SweepConfig bad_judges;
  bad_judges.judge_count = 10;
  CHECK_THROWS_AS(single_judge_sweep(bad_judges), ConfigError);
  SweepConfig bad_single;
  bad_single.judge_count = 1;
  CHECK_THROWS_AS(multi_judge_sweep(bad_single), ConfigError);

  SweepConfig too_many;
  too_many.expert_count = 26;  // enumeration cap in exact mode
  CHECK_THROWS_AS(single_judge_sweep(too_many), ConfigError);
}
