#pragma once

#include <cstdint>
#include <string_view>

namespace crn {

/// 64-bit FNV-1a over raw bytes.
inline uint64_t fnv1a(std::string_view bytes, uint64_t h = 0xcbf29ce484222325ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// splitmix64 finalizer; decorrelates structured inputs.
inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic uniform [0, 1) keyed by (seed, key). This is the pure
/// function behind catalysis assignment: the value depends only on the seed
/// and the canonical key bytes, never on evaluation order.
inline double hash_unit(uint64_t seed, std::string_view key) {
  uint64_t h = mix64(fnv1a(key) ^ mix64(seed));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace crn
