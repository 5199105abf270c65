#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace sqsar {

// Counter-based random numbers (Philox-4x32-10). Each draw is a pure
// function of (seed, row, col, stream), so a grid of noise samples can be
// filled in any order, by any number of threads, and come out bitwise
// identical every time.
namespace rng {

namespace detail {

inline void mulhilo32(std::uint32_t a, std::uint32_t b, std::uint32_t& hi,
                      std::uint32_t& lo) {
  std::uint64_t p = std::uint64_t(a) * std::uint64_t(b);
  hi = std::uint32_t(p >> 32);
  lo = std::uint32_t(p);
}

inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> c,
                                               std::uint32_t k0,
                                               std::uint32_t k1) {
  constexpr std::uint32_t kMul0 = 0xD2511F53u;
  constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  constexpr std::uint32_t kW0 = 0x9E3779B9u;
  constexpr std::uint32_t kW1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo32(kMul0, c[0], hi0, lo0);
    mulhilo32(kMul1, c[2], hi1, lo1);
    c = {hi1 ^ c[1] ^ k0, lo1, hi0 ^ c[3] ^ k1, lo0};
    k0 += kW0;
    k1 += kW1;
  }
  return c;
}

inline double to_unit_open(std::uint32_t hi, std::uint32_t lo) {
  // 53 significant bits mapped into (0, 1]; never zero, safe under log().
  std::uint64_t bits = (std::uint64_t(hi) << 32) | lo;
  return double((bits >> 11) + 1) * 0x1.0p-53;
}

}  // namespace detail

// Four independent 32-bit words for the given key/counter.
inline std::array<std::uint32_t, 4> words(std::uint64_t seed, std::uint32_t row,
                                          std::uint32_t col,
                                          std::uint32_t stream = 0) {
  return detail::philox4x32({row, col, stream, 0x53415251u},
                            std::uint32_t(seed), std::uint32_t(seed >> 32));
}

// Standard normal deviate via Box-Muller on one Philox block.
inline double normal(std::uint64_t seed, std::uint32_t row, std::uint32_t col,
                     std::uint32_t stream = 0) {
  auto w = words(seed, row, col, stream);
  double u1 = detail::to_unit_open(w[0], w[1]);
  double u2 = detail::to_unit_open(w[2], w[3]);
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

// Uniform in [0, 1).
inline double uniform(std::uint64_t seed, std::uint32_t row, std::uint32_t col,
                      std::uint32_t stream = 0) {
  auto w = words(seed, row, col, stream);
  return detail::to_unit_open(w[0], w[1]) - 0x1.0p-53;
}

}  // namespace rng
}  // namespace sqsar
