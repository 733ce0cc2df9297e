#pragma once

#include <cstdint>

namespace levdun {

// Counter-based uniform generator built on the SplitMix64 finalizer.
// Every draw is a pure function of (key, counter), so disjoint substreams
// can be handed to parallel workers and the results do not depend on
// scheduling or thread count.

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;

inline std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

// Key for substream `id` of a seed. Double mixing decorrelates nearby ids.
inline std::uint64_t substream_key(std::uint64_t seed, std::uint64_t id) {
  return mix64(mix64(seed + kGoldenGamma) + (id + 1) * kGoldenGamma);
}

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t key) : key_(key) {}

  std::uint64_t bits(std::uint64_t counter) const {
    return mix64(key_ + counter * kGoldenGamma);
  }

  // Uniform draw in the open interval (0, 1).
  double uniform(std::uint64_t counter) const {
    return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
  }

 private:
  std::uint64_t key_;
};

}  // namespace levdun
