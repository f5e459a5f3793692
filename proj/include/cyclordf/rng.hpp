#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace cyclordf {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// FNV-1a, used to turn an operation tag into a stream key.
constexpr std::uint64_t tag_hash(std::string_view tag) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : tag) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// A named stream is fully determined by (seed, tag, chunk); chunks are the
/// unit of parallel work, so thread count never changes the numbers drawn.
inline std::mt19937_64 named_stream(std::uint64_t seed, std::string_view tag,
                                    std::uint64_t chunk) {
  const std::uint64_t s = mix64(mix64(seed ^ tag_hash(tag)) + chunk);
  std::seed_seq seq{static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace cyclordf
