#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace abduct {

// All randomness in the tool flows through this one engine; the name is
// recorded in reports so runs can be reproduced bit-exactly.
using Rng = std::mt19937_64;

inline constexpr const char* kPrngName = "mt19937_64";

// Uniform double in [0, 1) from the top 53 bits. We roll our own draws
// instead of <random> distributions, whose output is implementation-defined.
inline double rand_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool rand_bool(Rng& rng, double p) { return rand_unit(rng) < p; }

// Unbiased integer in [0, n) by rejection.
inline std::uint64_t rand_below(Rng& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % n;
  std::uint64_t x = rng();
  while (x >= limit) x = rng();
  return x % n;
}

}  // namespace abduct
