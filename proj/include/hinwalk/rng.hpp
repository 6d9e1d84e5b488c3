#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace hinwalk {

using Rng = std::mt19937_64;

// splitmix64 finalizer
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

// Stream seed derivation:
//   derive_seed(m, tag, i) = mix64(mix64(m ^ fnv1a64(tag)) + (i + 1) * 0x9E3779B97F4A7C15)
// Each consumer of randomness draws from its own (tag, index) stream off the
// single master seed, so any piece of a run can be reproduced independently.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag,
                                 std::uint64_t index = 0) {
  return mix64(mix64(master ^ fnv1a64(tag)) + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

// Unbiased integer in [0, n). std::uniform_int_distribution is not
// bit-reproducible across standard library implementations; this is.
inline std::uint64_t bounded(Rng& rng, std::uint64_t n) {
  unsigned __int128 m = static_cast<unsigned __int128>(rng()) * n;
  auto low = static_cast<std::uint64_t>(m);
  if (low < n) {
    const std::uint64_t threshold = -n % n;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(rng()) * n;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

inline double uniform01(Rng& rng) { return (rng() >> 11) * 0x1.0p-53; }

template <typename T>
void shuffle_in_place(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[bounded(rng, i)]);
  }
}

}  // namespace hinwalk
