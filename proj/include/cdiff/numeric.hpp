#ifndef CDIFF_NUMERIC_HPP
#define CDIFF_NUMERIC_HPP

#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace cdiff {

/// Unsigned type wide enough for p^k + 1 with p <= 7, k <= 24.
using wide_uint = unsigned __int128;

inline bool is_prime(std::uint64_t v) noexcept {
  if (v < 2) return false;
  if (v % 2 == 0) return v == 2;
  for (std::uint64_t d = 3; d * d <= v; d += 2)
    if (v % d == 0) return false;
  return true;
}

/// Distinct prime divisors in increasing order.
inline std::vector<std::uint64_t> prime_divisors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= v; ++d) {
    if (v % d != 0) continue;
    out.push_back(d);
    while (v % d == 0) v /= d;
  }
  if (v > 1) out.push_back(v);
  return out;
}

/// base^exp, throwing on 64-bit overflow.
inline std::uint64_t checked_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base)
      throw std::overflow_error("integer power overflows 64 bits");
    r *= base;
  }
  return r;
}

inline wide_uint wide_pow(std::uint64_t base, unsigned exp) {
  wide_uint r = 1;
  for (unsigned i = 0; i < exp; ++i) r *= base;
  return r;
}

inline wide_uint wide_gcd(wide_uint a, wide_uint b) noexcept {
  while (b != 0) {
    wide_uint t = a % b;
    a = b;
    b = t;
  }
  return a;
}

/// Exponent of 2 in v (v > 0).
inline unsigned two_adic_valuation(std::uint64_t v) noexcept {
  unsigned t = 0;
  while (v != 0 && (v & 1u) == 0) {
    v >>= 1;
    ++t;
  }
  return t;
}

inline std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
  return a / std::gcd(a, b) * b;
}

}  // namespace cdiff

#endif  // CDIFF_NUMERIC_HPP
