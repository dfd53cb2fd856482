#pragma once

#include <cstdint>
#include <random>

namespace credint {

using Rng = std::mt19937_64;

/// SplitMix64 finaliser; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed of substream (a, b) under a master seed. Distinct (master, a, b)
/// triples give unrelated seeds; the mapping is fixed across platforms.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
  return mix64(mix64(mix64(master) ^ a) + 0x632be59bd9b4e019ULL * (b + 1));
}

/// Independent generator for substream (a, b).
inline Rng make_stream(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
  const std::uint64_t s = derive_seed(master, a, b);
  std::seed_seq seq{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32),
                    static_cast<std::uint32_t>(mix64(s)), static_cast<std::uint32_t>(mix64(s) >> 32)};
  return Rng(seq);
}

}  // namespace credint
