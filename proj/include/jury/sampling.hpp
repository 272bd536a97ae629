#pragma once

#include "jury/core.hpp"
#include "jury/rng.hpp"

namespace jury {

// Normal distribution N(mu, sigma) conditioned on the open interval (lo, hi).
// The defaults are the bounds used for competence panels throughout.
struct TruncatedNormalSpec {
  double mu = 0.5;
  double sigma = 0.1;
  double lo = 0.1;
  double hi = 0.9;
};

// Rejection budget before a spec is declared pathological.
inline constexpr int kMaxRejections = 100000;

// One draw by rejection sampling; the result lies strictly inside (lo, hi).
// Throws SamplingError if the interval holds too little mass to hit within
// kMaxRejections attempts.
double sample_truncated_normal(const TruncatedNormalSpec& spec, RandomStream& rng);

// `size` independent draws as a competence panel.
CompetencePanel sample_panel(int size, const TruncatedNormalSpec& spec, RandomStream& rng);

}  // namespace jury
