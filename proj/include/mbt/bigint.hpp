#pragma once

// Arbitrary-precision integers for counting formulas, plus uniform
// sampling below a big bound (needed for exact-weight tree samplers).

#include <boost/multiprecision/cpp_int.hpp>

#include "mbt/rng.hpp"

namespace mbt {

using BigInt = boost::multiprecision::cpp_int;

// Uniform BigInt in [0, bound), bound > 0, by 64-bit chunk rejection.
inline BigInt uniform_below(const BigInt& bound, Rng& rng) {
  if (bound <= 0) throw std::invalid_argument("uniform_below: bound must be > 0");
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(bound)) + 1;
  const unsigned chunks = (bits + 63) / 64;
  const unsigned top_bits = bits - 64 * (chunks - 1);
  const uint64_t top_mask =
      top_bits >= 64 ? ~0ULL : ((uint64_t{1} << top_bits) - 1);
  for (;;) {
    BigInt x = 0;
    for (unsigned c = 0; c < chunks; ++c) {
      uint64_t w = rng.next_u64();
      if (c == 0) w &= top_mask;
      x <<= 64;
      x += w;
    }
    if (x < bound) return x;
  }
}

}  // namespace mbt
