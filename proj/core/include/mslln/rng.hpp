#pragma once

#include <cstdint>

namespace mslln {

// Counter-based generator built on the SplitMix64 finalizer.
//
// Output i of a stream with key K is mix64(K + (i + 1) * kGamma), so any
// element can be computed independently and the whole sequence is fixed by
// the constants below. Sub-streams are derived by hashing (key, index).
inline constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;
inline constexpr std::uint64_t kMixMul1 = 0xBF58476D1CE4E5B9ULL;
inline constexpr std::uint64_t kMixMul2 = 0x94D049BB133111EBULL;
inline constexpr std::uint64_t kStreamSalt = 0xD1B54A32D192ED03ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * kMixMul1;
  z = (z ^ (z >> 27)) * kMixMul2;
  return z ^ (z >> 31);
}

/// Key of sub-stream `index` of `key`.
constexpr std::uint64_t derive_stream(std::uint64_t key, std::uint64_t index) noexcept {
  return mix64(key ^ mix64(index * kStreamSalt + kGamma));
}

class CounterRng {
 public:
  constexpr explicit CounterRng(std::uint64_t key, std::uint64_t counter = 0) noexcept
      : key_(key), counter_(counter) {}

  constexpr std::uint64_t at(std::uint64_t i) const noexcept { return mix64(key_ + (i + 1) * kGamma); }
  constexpr std::uint64_t next() noexcept { return at(counter_++); }

  /// Uniform on the open interval (0, 1) with 52 bits of resolution.
  double uniform() noexcept { return to_open_unit(next()); }

  /// Standard normal via Box-Muller (cosine branch); consumes two outputs.
  double normal() noexcept;

  constexpr std::uint64_t key() const noexcept { return key_; }
  constexpr std::uint64_t counter() const noexcept { return counter_; }

  static constexpr double to_open_unit(std::uint64_t bits) noexcept {
    return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
};

}  // namespace mslln
