#pragma once

#include <cstdint>
#include <random>

namespace bireg {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Master seed of a reproducible computation. Child streams are derived by
// index so results never depend on the order in which work is scheduled.
struct Seed {
  std::uint64_t master = 0;

  constexpr Seed derive(std::uint64_t index) const {
    return Seed{mix64(master ^ mix64(index + 0x632be59bd9b4e019ULL))};
  }
  Rng rng() const { return Rng(mix64(master)); }

  friend constexpr bool operator==(Seed, Seed) = default;
};

}  // namespace bireg
