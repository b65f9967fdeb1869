#pragma once

#include <cstdint>

namespace mpcp {

// splitmix64 (Steele/Lea/Flood). Chosen over std::mt19937 because the output
// for a given seed is identical on every platform and the whole state is one
// word, which makes deriving independent sub-streams trivial.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Unbiased uniform integer in [0, bound). Lemire's multiply-shift with
  // rejection; bound must be nonzero.
  std::uint64_t next_below(std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(next()) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
      std::uint64_t threshold = (0 - bound) % bound;
      while (lo < threshold) {
        m = static_cast<unsigned __int128>(next()) * bound;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  bool next_bernoulli(double p) { return next_double() < p; }

 private:
  std::uint64_t state_;
};

// Fixed stream tags so every consumer of a master seed draws from an
// independent, reproducible sub-stream.
inline constexpr std::uint64_t kNoiseStream = 1;
inline constexpr std::uint64_t kStartVectorStream = 2;
inline constexpr std::uint64_t kSbmStreamBase = 0x100;   // + layer index
inline constexpr std::uint64_t kEdgeStreamBase = 0x200;  // + layer index

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  SplitMix64 g(master ^ (0xD1B54A32D192ED03ull * (stream + 1)));
  g.next();
  return g.next();
}

}  // namespace mpcp
