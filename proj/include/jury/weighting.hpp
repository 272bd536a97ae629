#pragma once

#include <vector>

#include "jury/core.hpp"

namespace jury {

// Judge-assigned scores, rows indexed by judges and columns by experts.
struct ScoreMatrix {
  std::vector<std::vector<double>> rows;

  int judge_count() const { return static_cast<int>(rows.size()); }
  int expert_count() const { return rows.empty() ? 0 : static_cast<int>(rows.front().size()); }
};

// Restriction applied to each judge's score row before aggregation.
enum class WeightPolicy { Unrestricted, NonNegative, Normalized };

// ln(p / (1-p)). Throws DomainError outside (0,1): a certainty of 0 or 1 has
// no finite score.
double log_odds(double p);

// Element-wise log-odds of the true competences; the Bayes-optimal rule.
WeightVector optimal_weights(const CompetencePanel& panel);

// p_j*p_e + (1-p_j)*(1-p_e): the probability that judge and expert agree,
// which is how a judge of competence p_j perceives an expert of competence
// p_e. Strictly inside (0,1) whenever p_e is.
double perceived_competence(double p_j, double p_e);

// One judge's score row: log-odds of their perceived competences.
std::vector<double> judge_scores(double p_j, const CompetencePanel& experts);

// Row j is judge_scores(judges[j], experts).
ScoreMatrix score_matrix(const CompetencePanel& judges, const CompetencePanel& experts);

// Unrestricted: identity. NonNegative: clamp entries at 0. Normalized: clamp,
// then scale each row to sum 1; an all-zero row becomes uniform 1/m.
ScoreMatrix apply_policy(const ScoreMatrix& scores, WeightPolicy policy);

// Column-wise arithmetic mean of the judges' scores.
WeightVector aggregate(const ScoreMatrix& scores);

// Geometric mean of the odds p/(1-p), computed in the log domain.
double geometric_mean_odds(const std::vector<double>& perceived);

// Multiplicative factor by which the judges' collective odds estimate is off:
// geometric_mean_odds(perceived) / (true_p/(1-true_p)). The aggregated
// unrestricted weight then equals log_odds(true_p) + ln(alpha).
double gm_deviation_alpha(double true_p, const std::vector<double>& perceived);

enum class ThresholdKind {
  AlwaysEquivalent,  // any p_j just above 0.5 already matches the optimal rule
  Threshold,         // equivalence holds above `value`
  NeverBelowOne,     // only p_j = 1.0 matches
};

struct EquivalenceThreshold {
  ThresholdKind kind = ThresholdKind::Threshold;
  double value = 1.0;
};

// Infimum judge competence above which the judge's perceived scores induce
// the same rule as the optimal log-odds weights, located by bisection to the
// given absolute tolerance. Bisection assumes equivalence is monotone in p_j
// above 0.5; the result is spot-checked and a full linear scan takes over if
// the assumption fails.
EquivalenceThreshold equivalence_threshold(const CompetencePanel& panel,
                                           double tolerance = 1e-4);

}  // namespace jury
