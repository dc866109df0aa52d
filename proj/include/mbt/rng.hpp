#pragma once

// Seeded RNG streams for reproducible Monte Carlo runs.
//
// Determinism contract: the draw sequence depends only on (seed) for a
// root stream, or (seed, replica) for a replica stream. std::mt19937_64
// has a standardized output sequence; all bounded/real draws below avoid
// std::*_distribution (whose algorithms are implementation-defined), so
// identical (config, seed) runs are byte-identical across rebuilds.

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace mbt {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(splitmix64(seed)) {}

  // Counter-derived independent stream for replica i of a seeded run.
  static Rng for_replica(uint64_t seed, uint64_t replica) {
    return Rng(splitmix64(seed ^ 0xA02F8F2C9C8DB1A5ULL) + replica);
  }

  uint64_t next_u64() { return engine_(); }

  // Uniform on [0,1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on (0,1]; safe as argument of log().
  double next_double_pos() { return 1.0 - next_double(); }

  // Unbiased uniform integer in [0, bound) (Lemire's multiply-shift with
  // rejection). bound must be positive.
  uint64_t below(uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("Rng::below: bound must be > 0");
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * bound;
    auto lo = static_cast<uint64_t>(m);
    if (lo < bound) {
      uint64_t threshold = (-bound) % bound;
      while (lo < threshold) {
        m = static_cast<unsigned __int128>(next_u64()) * bound;
        lo = static_cast<uint64_t>(m);
      }
    }
    return static_cast<uint64_t>(m >> 64);
  }

  bool bernoulli(double p) { return next_double() < p; }

  // Number of failures before the first success, success probability p.
  uint64_t geometric(double p) {
    if (p <= 0.0 || p > 1.0) throw std::invalid_argument("Rng::geometric: p in (0,1] required");
    if (p == 1.0) return 0;
    double u = next_double_pos();
    double g = std::floor(std::log(u) / std::log1p(-p));
    if (g < 0) g = 0;
    return static_cast<uint64_t>(g);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mbt
