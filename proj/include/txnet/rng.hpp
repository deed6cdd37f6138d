#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace txnet {

// Seed scrambler / stream splitter (Steele et al. SplitMix64 update).
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

private:
  std::uint64_t state_;
};

// Seedable random stream used everywhere randomness is consumed.
//
// The engine is std::mt19937_64 (fully specified by the standard) seeded
// through SplitMix64, and all derived draws (bounded ints, unit reals) are
// implemented here rather than via std::*_distribution, whose output is
// implementation-defined. Identical seeds therefore reproduce identical
// streams across platforms. Run manifests record kAlgorithmId.
class Rng {
public:
  static constexpr const char* kAlgorithmId = "splitmix64+mt19937_64/v1";

  explicit Rng(std::uint64_t seed) : engine_(SplitMix64(seed).next()) {}

  std::uint64_t next_u64() { return engine_(); }

  // Unbiased integer in [0, bound) via masked rejection. bound must be > 0.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    std::uint64_t mask = ~std::uint64_t{0} >> countl_zero_(bound - 1);
    for (;;) {
      std::uint64_t v = next_u64() & mask;
      if (v < bound) return v;
    }
  }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(next_below(n)); }

  // Uniform real in [0, 1) with 53 random bits.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double prob) { return next_unit() < prob; }

  // Independent child stream; advances this stream by one draw.
  Rng split() { return Rng(next_u64()); }

  // First k elements of a uniform permutation of items (partial Fisher-Yates).
  template <typename T>
  void partial_shuffle(std::vector<T>& items, std::size_t k) {
    if (k > items.size()) k = items.size();
    for (std::size_t i = 0; i < k; ++i) {
      std::size_t j = i + index(items.size() - i);
      std::swap(items[i], items[j]);
    }
  }

private:
  static int countl_zero_(std::uint64_t x) {
    int n = 0;
    for (std::uint64_t probe = std::uint64_t{1} << 63; probe && !(x & probe); probe >>= 1) ++n;
    return n;
  }

  std::mt19937_64 engine_;
};

}  // namespace txnet
