#pragma once

#include <cstdint>

namespace probnet {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stateless draw: the result is a pure function of (seed, stream, counter),
// so independent streams can be evaluated in any order on any thread.
constexpr std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t stream,
                                     std::uint64_t counter) noexcept {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ mix64(stream));
  h = mix64(h ^ mix64(counter));
  return h;
}

// Uniform in [0, 1); uses the top 53 bits so the value is never 1.0.
constexpr double to_unit_interval(std::uint64_t h) noexcept {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

constexpr double counter_uniform(std::uint64_t seed, std::uint64_t stream,
                                 std::uint64_t counter) noexcept {
  return to_unit_interval(counter_hash(seed, stream, counter));
}

}  // namespace probnet
