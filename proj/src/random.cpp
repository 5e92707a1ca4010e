#include "sama/random.hpp"

namespace sama {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53;
constexpr std::uint32_t kMul1 = 0xCD9E8D57;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
  const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

}  // namespace

Philox4x32::Counter Philox4x32::apply(Counter ctr, Key key) noexcept {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kMul0, ctr[0], hi0, lo0);
    mulhilo(kMul1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kWeyl0;
    key[1] += kWeyl1;
  }
  return ctr;
}

std::uint64_t random_bits(std::uint64_t seed, RandomStream stream, std::uint32_t a, std::uint32_t b,
                          std::uint32_t c) noexcept {
  const auto out = Philox4x32::apply({static_cast<std::uint32_t>(stream), a, b, c}, Philox4x32::key_from_seed(seed));
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

std::uint64_t CounterRng::next_u64() noexcept {
  const auto c = counter_++;
  const auto out = Philox4x32::apply({stream_, static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32), 0},
                                     Philox4x32::key_from_seed(seed_));
  return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

}  // namespace sama
