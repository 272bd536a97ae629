#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "jury/rng.hpp"

namespace jury {

// One probability of voting correctly per agent. Expert panels require
// entries strictly inside (0,1); judge panels may touch the endpoints.
struct CompetencePanel {
  std::vector<double> probs;

  int size() const { return static_cast<int>(probs.size()); }
};

// Binary votes, index-aligned with an expert panel (1 = correct alternative).
struct VoteProfile {
  std::vector<std::uint8_t> votes;

  int size() const { return static_cast<int>(votes.size()); }
};

// Per-expert vote weights defining a weighted majority rule.
struct WeightVector {
  std::vector<double> weights;

  int size() const { return static_cast<int>(weights.size()); }
};

enum class Decision { One, Zero, Tie };

// What decide() does when every weight is numerically zero
// (max |w| < kZeroWeightEpsilon): treat the rule as an equal-weight majority,
// or let every profile tie so the coin decides.
enum class ZeroWeightFallback { EqualWeights, CoinFlip };

enum class Outcome : std::uint8_t { Win, Lose, Tie };

// Full decision table of a rule: the outcome for each subset of experts that
// votes 1, indexed by bitmask (bit e set = expert e in the subset). Two
// weight vectors define the same rule iff their tables are equal.
struct CoalitionStructure {
  int expert_count = 0;
  std::vector<Outcome> outcome_by_subset;

  bool operator==(const CoalitionStructure&) const = default;
};

inline constexpr double kZeroWeightEpsilon = 1e-12;
inline constexpr int kMaxEnumerationExperts = 25;  // exact_accuracy cap
inline constexpr int kMaxCoalitionExperts = 20;    // coalition_structure cap

// Neumaier running sum. decide() and the enumerators push weights through
// this in expert-index order, so tie detection is reproducible and identical
// across both code paths.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }

  double value() const { return sum + comp; }
};

// Weighted majority decision: One if the weight mass on 1-votes exceeds the
// mass on 0-votes, Zero if it falls short, Tie on exact equality.
Decision decide(const WeightVector& weights, const VoteProfile& profile,
                ZeroWeightFallback fallback = ZeroWeightFallback::EqualWeights);

// Probability that the rule elects the correct alternative, by exhaustive
// enumeration of all 2^m vote profiles. Ties credit 0.5. Deterministic.
double exact_accuracy(const CompetencePanel& panel, const WeightVector& weights,
                      ZeroWeightFallback fallback = ZeroWeightFallback::EqualWeights);

// Monte Carlo estimate of the same probability; ties are resolved by an
// unbiased coin drawn from `rng`.
double simulate_accuracy(const CompetencePanel& panel, const WeightVector& weights,
                         long trials, RandomStream& rng,
                         ZeroWeightFallback fallback = ZeroWeightFallback::EqualWeights);

CoalitionStructure coalition_structure(const WeightVector& weights,
                                       ZeroWeightFallback fallback = ZeroWeightFallback::EqualWeights);

// True iff the two vectors induce identical coalition structures.
bool rules_equivalent(const WeightVector& a, const WeightVector& b,
                      ZeroWeightFallback fallback = ZeroWeightFallback::EqualWeights);

// Throws Error if the table breaks complement consistency, or breaks
// monotonicity when `weights_nonnegative` is set. Monotonicity is a property
// of non-negative rules only: adding expert e to the winning side moves the
// margin by 2*w_e, which can demote a Win when w_e < 0.
void check_coalition_invariants(const CoalitionStructure& structure,
                                bool weights_nonnegative);

}  // namespace jury
