#pragma once

#include <cstdint>
#include <vector>

namespace cotr {

/// SplitMix64 run in counter mode: the i-th draw of stream `seed` is
/// mix(seed + (i+1) * 0x9E3779B97F4A7C15), so the sequence is a pure
/// function of (seed, i) — identical on every platform.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t at(std::uint64_t counter) const;

  std::uint64_t next() { return at(counter_++); }

  /// Unbiased draw in [0, bound) via 128-bit multiply with rejection.
  /// bound must be > 0.
  std::uint64_t next_bounded(std::uint64_t bound);

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// Fisher-Yates permutation of {0, ..., n-1} driven by CounterRng(seed).
std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed);

}  // namespace cotr
