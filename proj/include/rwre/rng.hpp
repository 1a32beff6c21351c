#pragma once

#include <cstdint>
#include <random>

namespace rwre {

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-mode word for (seed, site). Pure: independent of query order.
constexpr std::uint64_t site_word(std::uint64_t seed, std::int64_t site) noexcept {
  return mix64(mix64(seed ^ 0x243f6a8885a308d3ULL) + static_cast<std::uint64_t>(site) * 0xd1b54a32d192ed03ULL);
}

/// Uniform in [0, 1) with 53 bits of resolution.
constexpr double unit_from_word(std::uint64_t word) noexcept {
  return static_cast<double>(word >> 11) * 0x1.0p-53;
}

/// Splittable seed derivation: stream selects the purpose (environment, walk,
/// infinite-valley draw, ...), index selects the replica.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream, std::uint64_t index) noexcept {
  return mix64(mix64(base ^ mix64(stream + 0x632be59bd9b4e019ULL)) + index);
}

using Engine = std::mt19937_64;

inline Engine make_engine(std::uint64_t seed) { return Engine{mix64(seed)}; }

}  // namespace rwre
