#pragma once

#include <cstdint>
#include <limits>

namespace rulingsim {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t hash_combine(std::uint64_t a, std::uint64_t b) {
  return mix64(a ^ mix64(b + 0x632be59bd9b4e019ULL));
}

/// Seed of an independent sub-computation, e.g. one MIS call inside a stage.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  return hash_combine(seed, tag);
}

/// Phase tags are built from a small kind code and an index so that distinct
/// (kind, index) pairs never collide.
constexpr std::uint64_t make_tag(std::uint32_t kind, std::uint32_t index) {
  return (static_cast<std::uint64_t>(kind) << 32) | index;
}

/// Counter-based stream keyed by (seed, node, tag). Streams with equal keys
/// are identical; the output does not depend on the platform's <random>.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  constexpr RandomStream(std::uint64_t seed, std::uint64_t node, std::uint64_t tag)
      : key_(hash_combine(hash_combine(seed, node), tag)) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  constexpr result_type operator()() { return mix64(key_ + (++counter_) * 0xd1b54a32d192ed03ULL); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// True with probability p; p <= 0 never, p >= 1 always.
  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return uniform01() < p;
  }

  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    // Rejection on the top of the range keeps the result unbiased.
    const std::uint64_t limit = max() - max() % bound;
    std::uint64_t x;
    do {
      x = (*this)();
    } while (x >= limit);
    return x % bound;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace rulingsim
