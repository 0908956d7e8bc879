#pragma once

#include <cstdint>
#include <random>

namespace nonlin {

// splitmix64 step; used to spread user seeds over the mt19937_64 state space.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Derived seed for task `stream` of a run seeded with `seed`. Parallel sweeps
// hand each grid cell / Monte-Carlo sample its own stream so concurrent
// execution reproduces the sequential results exactly.
inline std::uint64_t splitmix_combine(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed ^ (0xD1B54A32D192ED03ULL * (stream + 1));
  std::uint64_t a = splitmix64(s);
  std::uint64_t b = splitmix64(s);
  return a ^ (b << 1);
}

inline std::mt19937_64 make_rng(std::uint64_t seed, std::uint64_t stream = 0) {
  return std::mt19937_64(splitmix_combine(seed, stream));
}

}  // namespace nonlin
