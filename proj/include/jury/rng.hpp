#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <span>

namespace jury {

// Deterministic counter-based random stream with pure substream derivation.
//
// A stream is identified by a 64-bit key; the n-th draw is a hash of
// (key, n), and a child stream's key is a hash of (key, index). A fixed seed
// plus a fixed derivation path therefore reproduces the same sequence no
// matter which thread runs it or how the parent stream was used in between.
// Experiments hand every (grid cell, trial) pair its own substream, which is
// what makes sweep output independent of scheduling.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : key_(seed), state_(seed) {}

  // Child stream for `index`; the parent is left untouched.
  RandomStream derive(std::uint64_t index) const {
    std::uint64_t k = mix64(key_ ^ 0xa0761d6478bd642full);
    k = mix64(k + 0x9e3779b97f4a7c15ull * (index + 1));
    return RandomStream(k);
  }

  RandomStream derive(std::span<const std::uint64_t> path) const {
    RandomStream s = *this;
    for (std::uint64_t index : path) s = s.derive(index);
    return s;
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix64(state_);
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in (0, 1]; safe under log().
  double next_double_pos() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
  }

  bool next_coin() { return (next_u64() >> 63) != 0; }

  // Standard normal via Box-Muller, one value per call (no cached half).
  double next_normal() {
    const double u = next_double_pos();
    const double v = next_double();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(kTwoPi * v);
  }

 private:
  static constexpr double kTwoPi = 6.283185307179586476925286766559;

  static std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t state_;
};

inline RandomStream derive_substream(const RandomStream& rng,
                                     std::span<const std::uint64_t> path) {
  return rng.derive(path);
}

inline RandomStream derive_substream(const RandomStream& rng,
                                     std::initializer_list<std::uint64_t> path) {
  return rng.derive(std::span<const std::uint64_t>(path.begin(), path.size()));
}

}  // namespace jury
