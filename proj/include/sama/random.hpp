#pragma once

#include <array>
#include <cstdint>

namespace sama {

/// Philox4x32-10 counter-based generator (Salmon et al., Random123).
///
/// A draw is a pure function of (key, counter), so any cell, frame or level
/// can be sampled independently of evaluation order or thread count.
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Counter apply(Counter counter, Key key) noexcept;

  static Key key_from_seed(std::uint64_t seed) noexcept {
    return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  }
};

/// Domain tags keep independent consumers of one seed from colliding.
enum class RandomStream : std::uint32_t {
  FragmentOffset = 0x4f464653,  // "OFFS"
  FrameJitter = 0x4a495454,     // "JITT"
  Property = 0x50524f50,        // "PROP"
};

/// 64 random bits for the given (seed, stream, a, b, c) address.
std::uint64_t random_bits(std::uint64_t seed, RandomStream stream, std::uint32_t a, std::uint32_t b,
                          std::uint32_t c) noexcept;

/// Maps 64 uniform bits onto [0, bound) by multiply-high. The bias is at most
/// bound / 2^64.
constexpr std::uint64_t bounded(std::uint64_t bits, std::uint64_t bound) noexcept {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(bits) * bound) >> 64);
}

/// Sequential convenience wrapper for tests and property generators: a
/// Philox stream addressed by (seed, stream id) and an incrementing counter.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint32_t stream = 0) noexcept : seed_(seed), stream_(stream) {}

  std::uint64_t next_u64() noexcept;
  /// Uniform double in [0, 1).
  double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi) noexcept {
    return lo + static_cast<int>(bounded(next_u64(), static_cast<std::uint64_t>(hi - lo) + 1));
  }

 private:
  std::uint64_t seed_;
  std::uint32_t stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace sama
