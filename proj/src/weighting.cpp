#include "jury/weighting.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "jury/errors.hpp"

namespace jury {
namespace {

void validate_expert_panel(const CompetencePanel& panel) {
  if (panel.probs.empty()) throw InputError("competence panel must not be empty");
  for (double p : panel.probs) {
    if (!(p > 0.0 && p < 1.0)) {
      throw DomainError("expert competence must lie strictly inside (0,1), got " +
                        std::to_string(p));
    }
  }
}

void validate_judge_panel(const CompetencePanel& panel) {
  if (panel.probs.empty()) throw InputError("judge panel must not be empty");
  for (double p : panel.probs) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw DomainError("judge competence must lie in [0,1], got " + std::to_string(p));
    }
  }
}

void validate_matrix(const ScoreMatrix& scores) {
  if (scores.rows.empty()) throw InputError("score matrix must have at least one row");
  const std::size_t m = scores.rows.front().size();
  if (m == 0) throw InputError("score matrix must have at least one column");
  for (const auto& row : scores.rows) {
    if (row.size() != m) throw DimensionError("score matrix rows differ in length");
    for (double x : row) {
      if (!std::isfinite(x)) throw InputError("score matrix contains a non-finite entry");
    }
  }
}

}  // namespace

double log_odds(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("log_odds is undefined outside (0,1), got " + std::to_string(p));
  }
  return std::log(p / (1.0 - p));
}

WeightVector optimal_weights(const CompetencePanel& panel) {
  validate_expert_panel(panel);
  WeightVector w;
  w.weights.reserve(panel.probs.size());
  for (double p : panel.probs) w.weights.push_back(log_odds(p));
  return w;
}

double perceived_competence(double p_j, double p_e) {
  if (!(p_j >= 0.0 && p_j <= 1.0)) {
    throw DomainError("judge competence must lie in [0,1], got " + std::to_string(p_j));
  }
  if (!(p_e > 0.0 && p_e < 1.0)) {
    throw DomainError("expert competence must lie strictly inside (0,1), got " +
                      std::to_string(p_e));
  }
  return p_j * p_e + (1.0 - p_j) * (1.0 - p_e);
}

std::vector<double> judge_scores(double p_j, const CompetencePanel& experts) {
  validate_expert_panel(experts);
  std::vector<double> row;
  row.reserve(experts.probs.size());
  for (double p_e : experts.probs) {
    row.push_back(log_odds(perceived_competence(p_j, p_e)));
  }
  return row;
}

ScoreMatrix score_matrix(const CompetencePanel& judges, const CompetencePanel& experts) {
  validate_judge_panel(judges);
  ScoreMatrix scores;
  scores.rows.reserve(judges.probs.size());
  for (double p_j : judges.probs) {
    scores.rows.push_back(judge_scores(p_j, experts));
  }
  return scores;
}

ScoreMatrix apply_policy(const ScoreMatrix& scores, WeightPolicy policy) {
  validate_matrix(scores);
  if (policy == WeightPolicy::Unrestricted) return scores;

  ScoreMatrix out = scores;
  for (auto& row : out.rows) {
    for (double& x : row) x = std::max(x, 0.0);
    if (policy == WeightPolicy::Normalized) {
      double sum = 0.0;
      for (double x : row) sum += x;
      if (sum == 0.0) {
        // pessimist's budget: no expert earned anything, weight them equally
        std::fill(row.begin(), row.end(), 1.0 / static_cast<double>(row.size()));
      } else {
        for (double& x : row) x /= sum;
      }
    }
  }
  return out;
}

WeightVector aggregate(const ScoreMatrix& scores) {
  validate_matrix(scores);
  const int n = scores.judge_count();
  const int m = scores.expert_count();
  WeightVector w;
  w.weights.assign(m, 0.0);
  for (int e = 0; e < m; ++e) {
    double sum = 0.0;
    for (int j = 0; j < n; ++j) sum += scores.rows[j][e];
    w.weights[e] = sum / static_cast<double>(n);
  }
  return w;
}

double geometric_mean_odds(const std::vector<double>& perceived) {
  if (perceived.empty()) throw InputError("perceived competence list must not be empty");
  double log_sum = 0.0;
  for (double p : perceived) log_sum += log_odds(p);
  return std::exp(log_sum / static_cast<double>(perceived.size()));
}

double gm_deviation_alpha(double true_p, const std::vector<double>& perceived) {
  if (!(true_p > 0.0 && true_p < 1.0)) {
    throw DomainError("true competence must lie strictly inside (0,1), got " +
                      std::to_string(true_p));
  }
  return geometric_mean_odds(perceived) / (true_p / (1.0 - true_p));
}

EquivalenceThreshold equivalence_threshold(const CompetencePanel& panel,
                                           double tolerance) {
  validate_expert_panel(panel);
  if (panel.size() > kMaxCoalitionExperts) {
    throw CapacityError("equivalence_threshold relies on coalition enumeration, capped at m = " +
                        std::to_string(kMaxCoalitionExperts));
  }
  if (!(tolerance > 0.0 && tolerance < 0.25)) {
    throw InputError("tolerance must lie in (0, 0.25)");
  }

  const CoalitionStructure target = coalition_structure(optimal_weights(panel));
  auto equivalent_at = [&](double p_j) {
    return coalition_structure(WeightVector{judge_scores(p_j, panel)}) == target;
  };

  const double lo_edge = 0.5 + tolerance;
  const double hi_edge = 1.0 - tolerance;

  // Non-monotone safety net: exhaustive scan at the requested resolution.
  auto linear_scan = [&]() -> EquivalenceThreshold {
    double last_bad = -1.0;
    for (double p_j = lo_edge; p_j < 1.0; p_j += tolerance) {
      if (!equivalent_at(p_j)) last_bad = p_j;
    }
    if (last_bad < 0.0) return {ThresholdKind::AlwaysEquivalent, 0.5};
    if (last_bad >= hi_edge) return {ThresholdKind::NeverBelowOne, 1.0};
    return {ThresholdKind::Threshold, last_bad + 0.5 * tolerance};
  };

  if (equivalent_at(lo_edge)) {
    for (int i = 1; i <= 64; ++i) {
      const double p_j = lo_edge + (hi_edge - lo_edge) * i / 64.0;
      if (!equivalent_at(p_j)) return linear_scan();
    }
    return {ThresholdKind::AlwaysEquivalent, 0.5};
  }
  if (!equivalent_at(hi_edge)) {
    return {ThresholdKind::NeverBelowOne, 1.0};
  }

  double lo = lo_edge;  // not equivalent here
  double hi = hi_edge;  // equivalent here
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    (equivalent_at(mid) ? hi : lo) = mid;
  }
  // Spot-check the bracket's upper side before trusting bisection.
  for (int i = 1; i <= 32; ++i) {
    const double p_j = hi + (hi_edge - hi) * i / 32.0;
    if (!equivalent_at(p_j)) return linear_scan();
  }
  return {ThresholdKind::Threshold, 0.5 * (lo + hi)};
}

}  // namespace jury
