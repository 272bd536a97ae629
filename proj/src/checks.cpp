#include "jury/checks.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include "jury/core.hpp"
#include "jury/rng.hpp"
#include "jury/weighting.hpp"

namespace jury {
namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

double uniform(RandomStream& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.next_double();
}

void record_failure(SuiteReport& report, const char* what, long case_index, double err) {
  ++report.failures;
  if (report.detail.empty()) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s (case %ld, error %.3g)", what, case_index, err);
    report.detail = buf;
  }
}

}  // namespace

SuiteReport check_theorem1(long cases, double epsilon, std::uint64_t seed) {
  SuiteReport report;
  report.name = "theorem1";
  const RandomStream root(seed);
  for (long c = 0; c < cases; ++c) {
    RandomStream rng = root.derive(static_cast<std::uint64_t>(c));
    const int m = 1 + static_cast<int>(rng.next_u64() % 6);
    const int n = 2 + static_cast<int>(rng.next_u64() % 9);

    CompetencePanel panel;
    ScoreMatrix scores;
    scores.rows.assign(n, std::vector<double>(m));
    for (int e = 0; e < m; ++e) {
      const double p = uniform(rng, 0.2, 0.8);
      panel.probs.push_back(p);
      // n-1 free perceived log-odds around the target; the last one closes
      // the geometric mean exactly.
      const double target = log_odds(p);
      double delta_sum = 0.0;
      for (int j = 0; j < n - 1; ++j) {
        const double delta = uniform(rng, -0.5, 0.5);
        delta_sum += delta;
        scores.rows[j][e] = log_odds(sigmoid(target + delta));
      }
      scores.rows[n - 1][e] = log_odds(sigmoid(target - delta_sum));
    }

    const WeightVector aggregated = aggregate(scores);
    const WeightVector optimal = optimal_weights(panel);
    for (int e = 0; e < m; ++e) {
      const double err = std::abs(aggregated.weights[e] - optimal.weights[e]);
      report.max_error = std::max(report.max_error, err);
      if (err > epsilon) record_failure(report, "aggregated weight off optimal", c, err);
    }
    ++report.cases;
  }
  return report;
}

SuiteReport check_corollary1(long cases, double epsilon, std::uint64_t seed) {
  SuiteReport report;
  report.name = "corollary1";
  const RandomStream root(seed);
  for (long c = 0; c < cases; ++c) {
    RandomStream rng = root.derive(static_cast<std::uint64_t>(c));
    const int m = 1 + static_cast<int>(rng.next_u64() % 6);
    const int n = 1 + static_cast<int>(rng.next_u64() % 10);

    CompetencePanel panel;
    std::vector<std::vector<double>> perceived(m);
    ScoreMatrix scores;
    scores.rows.assign(n, std::vector<double>(m));
    for (int e = 0; e < m; ++e) {
      panel.probs.push_back(uniform(rng, 0.05, 0.95));
      for (int j = 0; j < n; ++j) {
        const double q = uniform(rng, 0.05, 0.95);
        perceived[e].push_back(q);
        scores.rows[j][e] = log_odds(q);
      }
    }

    const WeightVector aggregated = aggregate(scores);
    const WeightVector optimal = optimal_weights(panel);
    for (int e = 0; e < m; ++e) {
      const double alpha = gm_deviation_alpha(panel.probs[e], perceived[e]);
      const double err =
          std::abs(aggregated.weights[e] - optimal.weights[e] - std::log(alpha));
      report.max_error = std::max(report.max_error, err);
      if (err > epsilon) record_failure(report, "weight error differs from ln(alpha)", c, err);
    }
    ++report.cases;
  }
  return report;
}

SuiteReport check_negation_flip(long cases, double epsilon, std::uint64_t seed) {
  SuiteReport report;
  report.name = "negation";
  const RandomStream root(seed);
  for (long c = 0; c < cases; ++c) {
    RandomStream rng = root.derive(static_cast<std::uint64_t>(c));
    const int m = 1 + static_cast<int>(rng.next_u64() % 8);

    CompetencePanel panel;
    WeightVector w;
    for (int e = 0; e < m; ++e) {
      panel.probs.push_back(uniform(rng, 0.05, 0.95));
      w.weights.push_back(uniform(rng, -3.0, 3.0));
    }
    WeightVector negated = w;
    for (double& x : negated.weights) x = -x;

    const double err =
        std::abs(exact_accuracy(panel, w) + exact_accuracy(panel, negated) - 1.0);
    report.max_error = std::max(report.max_error, err);
    if (err > epsilon) record_failure(report, "accuracies do not sum to 1", c, err);
    ++report.cases;
  }
  return report;
}

SuiteReport check_optimality(long panels, long challengers, double epsilon,
                             std::uint64_t seed) {
  SuiteReport report;
  report.name = "optimality";
  const RandomStream root(seed);
  for (long p = 0; p < panels; ++p) {
    RandomStream rng = root.derive(static_cast<std::uint64_t>(p));
    const int m = 1 + static_cast<int>(rng.next_u64() % 5);

    CompetencePanel panel;
    for (int e = 0; e < m; ++e) panel.probs.push_back(uniform(rng, 0.02, 0.98));
    const double optimal_acc = exact_accuracy(panel, optimal_weights(panel));

    for (long c = 0; c < challengers; ++c) {
      WeightVector challenger;
      for (int e = 0; e < m; ++e) challenger.weights.push_back(uniform(rng, -3.0, 3.0));
      const double gap = exact_accuracy(panel, challenger) - optimal_acc;
      report.max_error = std::max(report.max_error, gap);
      if (gap > epsilon) record_failure(report, "challenger beat the log-odds rule", p, gap);
      ++report.cases;
    }
  }
  return report;
}

}  // namespace jury
