#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace pdist {

using Rng = std::mt19937_64;

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Child seed for stream `index` of a master seed.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

/// Counter-based uniform in [0,1): a pure function of the key tuple.
inline double counter_uniform(std::initializer_list<std::uint64_t> key) {
  std::uint64_t h = 0x2545f4914f6cdd1dULL;
  for (std::uint64_t k : key) h = splitmix64(h ^ k);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace pdist
