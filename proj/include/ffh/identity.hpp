#pragma once

#include <atomic>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "ffh/poly.hpp"

namespace ffh {

/// Components of random sample points are drawn from [-kSampleBound, kSampleBound].
inline constexpr long kSampleBound = 1'000'000;

inline constexpr std::uint64_t kDefaultSeed = 0x5eed;

/// Seed for sampled checks that do not take one explicitly.
inline std::atomic<std::uint64_t>& sampling_seed() {
  static std::atomic<std::uint64_t> seed{kDefaultSeed};
  return seed;
}

struct IdentityCheck {
  bool equal = false;
  /// Point where the two sides evaluate differently; set whenever equal is false.
  std::optional<std::vector<Rational>> witness;
  int trials_run = 0;
};

inline std::vector<Rational> random_sample_point(int count, std::mt19937_64& rng) {
  std::uniform_int_distribution<long> dist(-kSampleBound, kSampleBound);
  std::vector<Rational> point;
  point.reserve(count);
  for (int i = 0; i < count; ++i) point.emplace_back(dist(rng));
  return point;
}

/// Equality of f and g: syntactic first, then by evaluation at `trials` random
/// integer points. `false` is always certified by a witness; `true` after
/// sampling is probabilistic (Schwartz-Zippel).
inline IdentityCheck random_identity_check(const MultiPoly& f, const MultiPoly& g, int trials,
                                           std::mt19937_64& rng) {
  MultiPoly::same_space(f, g);
  if (trials < 1) throw ValidationError("random_identity_check: trials must be >= 1");
  IdentityCheck result;
  if (f == g) {
    result.equal = true;
    return result;
  }
  for (int i = 0; i < trials; ++i) {
    auto point = random_sample_point(f.space().count, rng);
    ++result.trials_run;
    if (f.evaluate(point) != g.evaluate(point)) {
      result.witness = std::move(point);
      return result;
    }
  }
  result.equal = true;
  return result;
}

inline IdentityCheck random_identity_check(const MultiPoly& f, const MultiPoly& g, int trials,
                                           std::uint64_t seed = kDefaultSeed) {
  std::mt19937_64 rng(seed);
  return random_identity_check(f, g, trials, rng);
}

}  // namespace ffh
