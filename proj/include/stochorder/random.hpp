#pragma once

#include <cstdint>

namespace stochorder {

inline constexpr std::uint64_t splitmix64_mix(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t splitmix64(std::uint64_t x) { return splitmix64_mix(x + 0x9E3779B97F4A7C15ULL); }

/// Deterministic pseudo-random stream: equal seeds give equal sequences on
/// every platform. The engine is SplitMix64 (a Weyl sequence passed through
/// the splitmix64 finaliser) with our own conversions, so no
/// implementation-defined std distributions are involved.
class SeededStream {
 public:
  explicit SeededStream(std::uint64_t seed) : seed_(seed), state_(splitmix64(seed)) {}

  std::uint64_t seed() const noexcept { return seed_; }

  /// Independent child stream for parallel work item `index`. Children depend
  /// only on (seed, index), never on how work is scheduled.
  SeededStream split(std::uint64_t index) const { return SeededStream(splitmix64(seed_ ^ splitmix64(index + 1))); }

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return splitmix64_mix(state_);
  }

  /// Uniform on the open interval (0, 1).
  double uniform_open() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound), bound > 0 (Lemire's multiply-shift with
  /// rejection).
  std::uint64_t below(std::uint64_t bound) {
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = -bound % bound;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next_u64()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace stochorder
