#pragma once

#include <cstdint>
#include <random>

namespace mpcvc {

// splitmix64 finalizer, used to mix seeds and derivation path components.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// A root seed plus a derivation path. Identical (seed, path) pairs yield the
// same stream on every run, independent of which thread consumes it.
struct RngSeed {
  std::uint64_t seed = 0;

  RngSeed() = default;
  explicit RngSeed(std::uint64_t s) : seed(s) {}

  [[nodiscard]] RngSeed derive(std::uint64_t a) const {
    return RngSeed(mix64(seed ^ mix64(a + 0x51ed2701ULL)));
  }
  [[nodiscard]] RngSeed derive(std::uint64_t a, std::uint64_t b) const {
    return derive(a).derive(b);
  }
  [[nodiscard]] RngSeed derive(std::uint64_t a, std::uint64_t b,
                               std::uint64_t c) const {
    return derive(a).derive(b).derive(c);
  }

  [[nodiscard]] std::mt19937_64 engine() const {
    return std::mt19937_64(mix64(seed ^ 0xabcdef1234567890ULL));
  }

  bool operator==(const RngSeed&) const = default;
};

// Uniform double in [0,1). Built from the raw 64-bit output so the value does
// not depend on the standard library's distribution implementation.
inline double next_unit(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, bound) via rejection sampling on the raw stream.
inline std::uint64_t next_below(std::mt19937_64& eng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = eng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace mpcvc
