#pragma once

#include <cstdint>

namespace qineq {

// Counter-based uniform stream built on the SplitMix64 finalizer
// (Steele, Lea & Flood, "Fast splittable pseudorandom number generators",
// OOPSLA 2014). The i-th draw of stream `key` is mix64(key + (i + 1) * gamma),
// so any draw can be computed without generating its predecessors and
// distinct keys give statistically independent streams.

inline constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Hash-combines a parent seed with a child index into a new stream key.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index) noexcept {
  return mix64(mix64(parent ^ 0x5851f42d4c957f2dULL) + (index + 1) * kGoldenGamma);
}

/// Replicate seed for the Monte Carlo runner: depends only on
/// (master_seed, n, replicate), never on scheduling or on other sample sizes.
constexpr std::uint64_t replicate_seed(std::uint64_t master, std::uint64_t n,
                                       std::uint64_t replicate) noexcept {
  return derive_seed(derive_seed(master, n), replicate);
}

class CounterRng {
 public:
  constexpr explicit CounterRng(std::uint64_t key) noexcept : key_(key) {}

  constexpr std::uint64_t bits(std::uint64_t counter) const noexcept {
    return mix64(key_ + (counter + 1) * kGoldenGamma);
  }

  /// Uniform on the open interval (0,1): 52-bit lattice shifted by half a step.
  /// (A 53-bit lattice would round its top point up to 1.0.)
  constexpr double uniform(std::uint64_t counter) const noexcept {
    return (static_cast<double>(bits(counter) >> 12) + 0.5) * 0x1.0p-52;
  }

  constexpr std::uint64_t key() const noexcept { return key_; }

 private:
  std::uint64_t key_;
};

}  // namespace qineq
