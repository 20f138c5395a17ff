#pragma once

#include <cstdint>

#include "akde/special.hpp"

namespace akde {

namespace rng_detail {

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kDrawStep = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kStreamStep = 0xD1B54A32D192ED03ULL;
constexpr std::uint64_t kSeedSalt = 0x6A09E667F3BCC909ULL;

}  // namespace rng_detail

// Counter-based generator: draw i of a stream is a pure function of the
// 64-bit stream key and i, so any draw is addressable without sequencing and
// results do not depend on evaluation order or worker count. Substreams are
// derived through a separate key schedule so they never collide with draws.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) noexcept
      : key_(rng_detail::mix64(seed ^ rng_detail::kSeedSalt)) {}

  RandomStream substream(std::uint64_t index) const noexcept {
    RandomStream child(0);
    child.key_ = rng_detail::mix64(
        (key_ ^ 0x9D2C5680F12AB4D1ULL) +
        (index + 1) * rng_detail::kStreamStep);
    return child;
  }

  std::uint64_t bits(std::uint64_t i) const noexcept {
    return rng_detail::mix64(key_ + (i + 1) * rng_detail::kDrawStep);
  }

  // Uniform on the open interval (0, 1); 53-bit mantissa, never 0 or 1.
  double uniform(std::uint64_t i) const noexcept {
    return (static_cast<double>(bits(i) >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal by inverse transform; consumes exactly draw i.
  double normal(std::uint64_t i) const { return normal_quantile(uniform(i)); }

  std::uint64_t key() const noexcept { return key_; }

 private:
  std::uint64_t key_;
};

}  // namespace akde
