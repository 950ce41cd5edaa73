#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace mimogan {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Counter-based seed derivation. The derived seed is
//
//   h_0     = mix64(master)
//   h_{i+1} = mix64(h_i ^ (path[i] + 0x9e3779b97f4a7c15 * (i + 1)))
//
// so each (master, path) tuple maps to an independent stream regardless of
// the order in which streams are created.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) noexcept;

inline Rng make_rng(std::uint64_t seed) { return Rng{seed}; }

// Purpose tags used as the last element of a derivation path.
enum class Stream : std::uint64_t {
  channel = 1,
  data = 2,
  noise = 3,
  init = 4,
  train = 5,
  los = 6,
  split = 7,
  augment = 8,
};

inline std::uint64_t tag(Stream s) noexcept { return static_cast<std::uint64_t>(s); }

}  // namespace mimogan
