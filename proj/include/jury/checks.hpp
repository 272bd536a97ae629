#pragma once

#include <cstdint>
#include <string>

namespace jury {

struct SuiteReport {
  std::string name;
  long cases = 0;
  long failures = 0;
  double max_error = 0.0;  // worst deviation seen, suite-specific metric
  std::string detail;      // first failure, empty when clean

  bool passed() const { return failures == 0; }
};

// Randomized per-expert perceived competences constructed to satisfy the
// geometric-mean condition exactly; the aggregated weights must reproduce the
// optimal log-odds weights within epsilon.
SuiteReport check_theorem1(long cases, double epsilon, std::uint64_t seed);

// Arbitrary perceived competences; aggregated minus optimal weight must equal
// ln(alpha) from gm_deviation_alpha within epsilon, per expert.
SuiteReport check_corollary1(long cases, double epsilon, std::uint64_t seed);

// exact_accuracy(panel, -w) + exact_accuracy(panel, w) = 1 within epsilon.
SuiteReport check_negation_flip(long cases, double epsilon, std::uint64_t seed);

// The log-odds rule is never beaten by a random challenger weight vector by
// more than epsilon of exact accuracy.
SuiteReport check_optimality(long panels, long challengers, double epsilon,
                             std::uint64_t seed);

}  // namespace jury
