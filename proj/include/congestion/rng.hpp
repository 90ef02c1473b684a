#pragma once

#include <cstdint>
#include <random>

namespace congestion {

// Deterministic uniform draws on top of mt19937_64. The raw 64-bit engine is
// fully specified by the standard, and the two mappings below avoid the
// implementation-defined std::uniform_* distributions, so identical seeds
// produce identical decision streams on every platform and compiler.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform double in [0, 1), 53 random bits.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Unbiased uniform integer in [0, bound), bound >= 1 (Lemire rejection).
  int uniform_below(int bound) {
    const auto n = static_cast<std::uint64_t>(bound);
    unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(engine_()) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<int>(m >> 64);
  }

 private:
  std::mt19937_64 engine_;
};

// One SplitMix64 output step.
inline std::uint64_t splitmix64(std::uint64_t state) {
  std::uint64_t z = state + 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace congestion
