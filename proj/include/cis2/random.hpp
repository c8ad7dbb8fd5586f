#pragma once

#include <cstdint>
#include <random>

namespace cis2 {

// Unbiased draw in [0, bound) by rejection. Unlike
// std::uniform_int_distribution the sequence is the same on every standard
// library, since mt19937_64's output is fully specified.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return draw % bound;
}

}  // namespace cis2
