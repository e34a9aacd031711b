#pragma once

#include <cstdint>
#include <random>

namespace hecke {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for task (stream, index) derived from a base seed.
inline std::uint64_t task_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(seed ^ (stream << 32) ^ index);
}

/// Uniform integer in [lo, hi]. Implemented by hand so that sequences do not
/// depend on the standard library's distribution algorithms.
inline std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<std::int64_t>(rng() % span);
}

/// Uniform double in [0, 1).
inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace hecke
