#pragma once

#include <array>
#include <cstdint>
#include <random>

namespace aklt {

// SplitMix64 step. Used to expand seeds and to derive sub-stream seeds;
// the generator consumed by simulation code is std::mt19937_64.
inline uint64_t splitmix64_next(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Deterministic sub-stream derivation: absorb up to three tags
// (subcommand id, chain index, replicate index) into the master seed.
// Distinct tag tuples give statistically independent streams; the same
// tuple always reproduces the same stream.
inline uint64_t derive_stream(uint64_t seed, uint64_t a = 0, uint64_t b = 0,
                              uint64_t c = 0) {
  uint64_t s = seed;
  splitmix64_next(s);
  s ^= a;
  splitmix64_next(s);
  s ^= b;
  splitmix64_next(s);
  s ^= c;
  return splitmix64_next(s);
}

using Rng = std::mt19937_64;

inline Rng make_rng(uint64_t stream_seed) {
  uint64_t s = stream_seed;
  std::array<uint32_t, 8> w;
  for (int i = 0; i < 8; i += 2) {
    uint64_t v = splitmix64_next(s);
    w[i] = static_cast<uint32_t>(v);
    w[i + 1] = static_cast<uint32_t>(v >> 32);
  }
  std::seed_seq seq(w.begin(), w.end());
  return Rng(seq);
}

// Uniform double in [0,1) from the top 53 bits; fully specified, so runs
// are byte-identical across standard library implementations.
inline double uniform01(Rng& g) { return (g() >> 11) * 0x1.0p-53; }

// Unbiased integer in [0,n) by rejection.
inline uint64_t uniform_below(Rng& g, uint64_t n) {
  uint64_t threshold = (-n) % n;
  for (;;) {
    uint64_t r = g();
    if (r >= threshold) return r % n;
  }
}

}  // namespace aklt
