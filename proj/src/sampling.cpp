#include "jury/sampling.hpp"

#include <string>

#include "jury/errors.hpp"

namespace jury {
namespace {

void validate_spec(const TruncatedNormalSpec& spec) {
  if (!(spec.sigma > 0.0)) {
    throw InputError("truncated normal sigma must be > 0, got " + std::to_string(spec.sigma));
  }
  if (!(spec.lo < spec.hi)) {
    throw InputError("truncated normal bounds must satisfy lo < hi, got [" +
                     std::to_string(spec.lo) + ", " + std::to_string(spec.hi) + "]");
  }
}

}  // namespace

double sample_truncated_normal(const TruncatedNormalSpec& spec, RandomStream& rng) {
  validate_spec(spec);
  for (int attempt = 0; attempt < kMaxRejections; ++attempt) {
    const double x = spec.mu + spec.sigma * rng.next_normal();
    if (x > spec.lo && x < spec.hi) return x;
  }
  throw SamplingError("truncated normal rejection cap (" + std::to_string(kMaxRejections) +
                      ") hit for mu=" + std::to_string(spec.mu) +
                      " sigma=" + std::to_string(spec.sigma) + " bounds=(" +
                      std::to_string(spec.lo) + "," + std::to_string(spec.hi) +
                      "); the interval holds almost no probability mass");
}

CompetencePanel sample_panel(int size, const TruncatedNormalSpec& spec, RandomStream& rng) {
  if (size < 1) throw InputError("panel size must be >= 1");
  CompetencePanel panel;
  panel.probs.reserve(size);
  for (int i = 0; i < size; ++i) {
    panel.probs.push_back(sample_truncated_normal(spec, rng));
  }
  return panel;
}

}  // namespace jury
