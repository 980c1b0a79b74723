#pragma once

// Word-size modular arithmetic shared by every module. Moduli are at most
// 2^63 - 1; products go through unsigned __int128.

#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "waring/errors.hpp"

namespace waring {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline constexpr u64 kMaxModulus = (u64{1} << 63) - 1;

inline u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 add_mod(u64 a, u64 b, u64 m) {
  u64 s = a + b;  // a, b < m < 2^63 so no wraparound
  return s >= m ? s - m : s;
}

inline u64 pow_mod(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// Inverse of a modulo m, or nullopt when gcd(a, m) != 1.
inline std::optional<u64> inverse_mod(u64 a, u64 m) {
  i64 old_r = static_cast<i64>(a % m), r = static_cast<i64>(m);
  i64 old_s = 1, s = 0;
  while (r != 0) {
    i64 q = old_r / r;
    i64 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) return m == 1 ? std::optional<u64>(0) : std::nullopt;
  i64 mm = static_cast<i64>(m);
  return static_cast<u64>(((old_s % mm) + mm) % mm);
}

/// b^e, throwing RangeError if the result exceeds `limit`.
inline u64 checked_pow(u64 b, unsigned e, u64 limit = kMaxModulus) {
  u128 r = 1;
  for (unsigned i = 0; i < e; ++i) {
    r *= b;
    if (r > limit) throw RangeError("integer power exceeds supported range");
  }
  return static_cast<u64>(r);
}

inline u64 checked_mul(u64 a, u64 b, u64 limit = kMaxModulus) {
  u128 r = static_cast<u128>(a) * b;
  if (r > limit) throw RangeError("integer product exceeds supported range");
  return static_cast<u64>(r);
}

/// Deterministic Miller-Rabin for all 64-bit inputs.
inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned i = 1; i < r; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// All primes <= limit (Eratosthenes, odd-only).
inline std::vector<u64> primes_up_to(u64 limit) {
  std::vector<u64> primes;
  if (limit < 2) return primes;
  primes.push_back(2);
  const u64 half = (limit - 1) / 2;  // index i <-> 2i + 1, i >= 1
  std::vector<bool> composite(half + 1, false);
  for (u64 i = 1; i <= half; ++i) {
    if (composite[i]) continue;
    const u64 p = 2 * i + 1;
    primes.push_back(p);
    for (u64 j = (p * p - 1) / 2; j <= half; j += p) composite[j] = true;
  }
  return primes;
}

inline u64 euler_phi_prime_power(u64 p, unsigned e) {
  return checked_pow(p, e - 1) * (p - 1);
}

}  // namespace waring
