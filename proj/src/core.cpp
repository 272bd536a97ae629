#include "jury/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "jury/errors.hpp"

namespace jury {
namespace {

void validate_weights(const WeightVector& w) {
  if (w.weights.empty()) throw InputError("weight vector must not be empty");
  for (double x : w.weights) {
    if (!std::isfinite(x)) {
      throw InputError("weight vector contains a non-finite entry");
    }
  }
}

void validate_profile(const VoteProfile& profile) {
  for (auto v : profile.votes) {
    if (v > 1) throw InputError("votes must be 0 or 1");
  }
}

void validate_expert_panel(const CompetencePanel& panel) {
  if (panel.probs.empty()) throw InputError("competence panel must not be empty");
  for (double p : panel.probs) {
    if (!(p > 0.0 && p < 1.0)) {
      throw InputError("expert competence must lie strictly inside (0,1), got " +
                       std::to_string(p));
    }
  }
}

bool numerically_zero(const std::vector<double>& w) {
  double mx = 0.0;
  for (double x : w) mx = std::max(mx, std::abs(x));
  return mx < kZeroWeightEpsilon;
}

Decision compare_sides(double mass_one, double mass_zero) {
  if (mass_one > mass_zero) return Decision::One;
  if (mass_one < mass_zero) return Decision::Zero;
  return Decision::Tie;
}

// DFS over vote profiles accumulating win/tie probability mass. Weights are
// pushed onto the two sides in expert-index order, matching decide() bit for
// bit, so the enumerated decisions are the ones decide() would return.
struct AccuracyEnumerator {
  const std::vector<double>& probs;
  const std::vector<double>& weights;
  CompensatedSum win;
  CompensatedSum tie;

  void run(std::size_t e, double prob, CompensatedSum s1, CompensatedSum s0) {
    if (e == probs.size()) {
      switch (compare_sides(s1.value(), s0.value())) {
        case Decision::One: win.add(prob); break;
        case Decision::Tie: tie.add(prob); break;
        case Decision::Zero: break;
      }
      return;
    }
    CompensatedSum on = s1;
    on.add(weights[e]);
    run(e + 1, prob * probs[e], on, s0);
    CompensatedSum off = s0;
    off.add(weights[e]);
    run(e + 1, prob * (1.0 - probs[e]), s1, off);
  }
};

struct CoalitionEnumerator {
  const std::vector<double>& weights;
  std::vector<Outcome>& table;

  void run(std::size_t e, std::uint32_t mask, CompensatedSum s1, CompensatedSum s0) {
    if (e == weights.size()) {
      switch (compare_sides(s1.value(), s0.value())) {
        case Decision::One: table[mask] = Outcome::Win; break;
        case Decision::Zero: table[mask] = Outcome::Lose; break;
        case Decision::Tie: table[mask] = Outcome::Tie; break;
      }
      return;
    }
    CompensatedSum on = s1;
    on.add(weights[e]);
    run(e + 1, mask | (std::uint32_t{1} << e), on, s0);
    CompensatedSum off = s0;
    off.add(weights[e]);
    run(e + 1, mask, s1, off);
  }
};

}  // namespace

Decision decide(const WeightVector& weights, const VoteProfile& profile,
                ZeroWeightFallback fallback) {
  validate_weights(weights);
  validate_profile(profile);
  if (weights.size() != profile.size()) {
    throw DimensionError("decide: " + std::to_string(weights.size()) +
                         " weights vs " + std::to_string(profile.size()) + " votes");
  }
  if (numerically_zero(weights.weights)) {
    if (fallback == ZeroWeightFallback::CoinFlip) return Decision::Tie;
    int ones = 0;
    for (auto v : profile.votes) ones += v;
    return compare_sides(ones, profile.size() - ones);
  }
  CompensatedSum side1;
  CompensatedSum side0;
  for (int e = 0; e < weights.size(); ++e) {
    (profile.votes[e] ? side1 : side0).add(weights.weights[e]);
  }
  return compare_sides(side1.value(), side0.value());
}

double exact_accuracy(const CompetencePanel& panel, const WeightVector& weights,
                      ZeroWeightFallback fallback) {
  validate_expert_panel(panel);
  validate_weights(weights);
  if (panel.size() != weights.size()) {
    throw DimensionError("exact_accuracy: " + std::to_string(panel.size()) +
                         " competences vs " + std::to_string(weights.size()) + " weights");
  }
  if (panel.size() > kMaxEnumerationExperts) {
    throw CapacityError("exact_accuracy enumerates 2^m profiles and is capped at m = " +
                        std::to_string(kMaxEnumerationExperts) +
                        "; use simulate_accuracy for larger panels");
  }

  std::vector<double> w = weights.weights;
  if (numerically_zero(w)) {
    if (fallback == ZeroWeightFallback::CoinFlip) return 0.5;  // every profile ties
    std::fill(w.begin(), w.end(), 1.0);
  }

  AccuracyEnumerator en{panel.probs, w, {}, {}};
  en.run(0, 1.0, {}, {});
  return std::clamp(en.win.value() + 0.5 * en.tie.value(), 0.0, 1.0);
}

double simulate_accuracy(const CompetencePanel& panel, const WeightVector& weights,
                         long trials, RandomStream& rng, ZeroWeightFallback fallback) {
  validate_expert_panel(panel);
  validate_weights(weights);
  if (panel.size() != weights.size()) {
    throw DimensionError("simulate_accuracy: " + std::to_string(panel.size()) +
                         " competences vs " + std::to_string(weights.size()) + " weights");
  }
  if (trials < 1) throw InputError("trials must be >= 1");

  std::vector<double> w = weights.weights;
  bool always_tie = false;
  if (numerically_zero(w)) {
    if (fallback == ZeroWeightFallback::CoinFlip) {
      always_tie = true;
    } else {
      std::fill(w.begin(), w.end(), 1.0);
    }
  }

  const int m = panel.size();
  long correct = 0;
  for (long t = 0; t < trials; ++t) {
    CompensatedSum side1;
    CompensatedSum side0;
    for (int e = 0; e < m; ++e) {
      const bool one = rng.next_double() < panel.probs[e];
      (one ? side1 : side0).add(w[e]);
    }
    Decision d = always_tie ? Decision::Tie : compare_sides(side1.value(), side0.value());
    if (d == Decision::Tie) d = rng.next_coin() ? Decision::One : Decision::Zero;
    if (d == Decision::One) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(trials);
}

CoalitionStructure coalition_structure(const WeightVector& weights,
                                       ZeroWeightFallback fallback) {
  validate_weights(weights);
  const int m = weights.size();
  if (m > kMaxCoalitionExperts) {
    throw CapacityError("coalition_structure enumerates 2^m subsets and is capped at m = " +
                        std::to_string(kMaxCoalitionExperts));
  }

  std::vector<double> w = weights.weights;
  bool always_tie = false;
  if (numerically_zero(w)) {
    if (fallback == ZeroWeightFallback::CoinFlip) {
      always_tie = true;
    } else {
      std::fill(w.begin(), w.end(), 1.0);
    }
  }

  CoalitionStructure structure;
  structure.expert_count = m;
  structure.outcome_by_subset.assign(std::size_t{1} << m, Outcome::Tie);
  if (!always_tie) {
    CoalitionEnumerator en{w, structure.outcome_by_subset};
    en.run(0, 0, {}, {});
  }
#ifndef NDEBUG
  const bool nonneg =
      always_tie || *std::min_element(w.begin(), w.end()) >= 0.0;
  check_coalition_invariants(structure, nonneg);
#endif
  return structure;
}

bool rules_equivalent(const WeightVector& a, const WeightVector& b,
                      ZeroWeightFallback fallback) {
  if (a.size() != b.size()) {
    throw DimensionError("rules_equivalent: " + std::to_string(a.size()) + " vs " +
                         std::to_string(b.size()) + " weights");
  }
  return coalition_structure(a, fallback) == coalition_structure(b, fallback);
}

void check_coalition_invariants(const CoalitionStructure& structure,
                                bool weights_nonnegative) {
  const int m = structure.expert_count;
  const std::size_t n = std::size_t{1} << m;
  if (structure.outcome_by_subset.size() != n) {
    throw Error("coalition table has " + std::to_string(structure.outcome_by_subset.size()) +
                " entries for " + std::to_string(m) + " experts");
  }
  const std::uint32_t full = static_cast<std::uint32_t>(n - 1);
  for (std::uint32_t s = 0; s < n; ++s) {
    const Outcome a = structure.outcome_by_subset[s];
    const Outcome b = structure.outcome_by_subset[full & ~s];
    const bool complement_ok =
        a == Outcome::Tie ? b == Outcome::Tie
                          : b == (a == Outcome::Win ? Outcome::Lose : Outcome::Win);
    if (!complement_ok) {
      throw Error("coalition table violates complement consistency at subset " +
                  std::to_string(s));
    }
    if (weights_nonnegative && a == Outcome::Win) {
      for (int e = 0; e < m; ++e) {
        if (structure.outcome_by_subset[s | (std::uint32_t{1} << e)] != Outcome::Win) {
          throw Error("coalition table violates monotonicity at subset " +
                      std::to_string(s));
        }
      }
    }
  }
}

}  // namespace jury
