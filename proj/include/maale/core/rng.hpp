#pragma once

#include <cstdint>
#include <random>

namespace maale {

// splitmix64 finalizer; derives independent stream seeds from (base, index).
constexpr std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Engine plus the handful of draws the games need. The draw helpers are
// written out here so sequences do not depend on the standard library's
// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  void seed(std::uint64_t seed) { engine_.seed(seed); }

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, n); n must be positive.
  int below(int n) {
    auto wide = static_cast<unsigned __int128>(next()) * static_cast<std::uint64_t>(n);
    return static_cast<int>(wide >> 64);
  }

  // Uniform integer in [lo, hi].
  int between(int lo, int hi) { return lo + below(hi - lo + 1); }

  // Uniform double in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  bool chance(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace maale
