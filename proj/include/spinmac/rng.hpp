#pragma once

#include <cstdint>
#include <random>

namespace spinmac {

// splitmix64 step, used to whiten stream ids into engine seeds
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Deterministic per-stream RNG: every (seed, stream id...) pair owns an
// independent generator, so results do not depend on thread scheduling.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t a = 0,
                                   std::uint64_t b = 0, std::uint64_t c = 0) {
  std::uint64_t s = mix64(seed);
  s = mix64(s ^ mix64(a + 0x100000001b3ULL));
  s = mix64(s ^ mix64(b + 0xcbf29ce484222325ULL));
  s = mix64(s ^ mix64(c + 0x9e3779b97f4a7c15ULL));
  return std::mt19937_64(s);
}

}  // namespace spinmac
