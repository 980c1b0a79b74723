#pragma once

// k-th power residue structure: the arithmetic constants tau, eta, R_k,
// omega, the W-trick modulus and the root counts sigma_W.

#include <map>
#include <span>
#include <vector>

#include "waring/modulus.hpp"
#include "waring/residue_set.hpp"

namespace waring {

/// Largest h with p^h | k.
unsigned tau(u64 k, u64 p);

/// tau(k, p) + 2 when p = 2 and 2 | k, otherwise tau(k, p) + 1.
/// Only defined for primes with (p - 1) | k.
unsigned eta(unsigned k, u64 p);

/// Number of distinct prime divisors.
unsigned omega(u64 n);

struct KContext {
  unsigned k = 0;
  std::map<u64, unsigned> eta_table;  ///< primes p with (p - 1) | k
  u64 R_k = 1;
  unsigned omega_k = 0;
};

/// Supported for 2 <= k <= 12.
KContext build_k_context(unsigned k);

/// {t^k mod q : t in Z_q}, built per prime power and CRT-combined.
ResidueSet kth_power_classes(const FactoredModulus& q, unsigned k);

/// Z(q): the k-th power classes coprime to q.
ResidueSet unit_kth_power_classes(const FactoredModulus& q, unsigned k);

/// phi(p^e) / gcd(k, phi(p^e)), the cyclic-group count of unit k-th powers.
///
/// This is exact for odd p. For p = 2, e >= 3 and even k the unit group is
/// not cyclic and the formula over-counts; see unit_power_class_count.
u64 size_Z_formula(u64 p, unsigned e, unsigned k);

/// Exact |Z(p^e)|, handling Z_{2^e}^* = C_2 x C_{2^(e-2)}.
u64 unit_power_class_count(u64 p, unsigned e, unsigned k);

struct Congruence {
  u64 residue = 0;
  u64 modulus = 1;
  bool operator==(const Congruence&) const = default;
};

/// Unique residue modulo the product of pairwise coprime moduli.
Congruence crt_combine(std::span<const Congruence> parts);

/// W = prod_{p <= w} p^k together with root-count tables for sigma_W.
class WContext {
 public:
  /// Root counts are tabulated per prime power p^k <= 10^6.
  static constexpr u64 kMaxPrimePower = 1'000'000;

  WContext(unsigned k, unsigned w);

  unsigned k() const { return k_; }
  unsigned w() const { return w_; }
  const FactoredModulus& W() const { return W_; }
  u64 modulus() const { return W_.value(); }

  /// |{z in Z_W : z^k = b (mod W)}|.
  u64 sigma(u64 b) const;

  /// Same count by direct enumeration over Z_W (W <= 10^7).
  u64 sigma_by_enumeration(u64 b) const;

 private:
  unsigned k_;
  unsigned w_;
  FactoredModulus W_;
  // tables_[i][r] = #{z mod p_i^k : z^k = r (mod p_i^k)}
  std::vector<std::vector<u64>> tables_;
};

inline u64 sigma_W(u64 b, const WContext& ctx) { return ctx.sigma(b); }

}  // namespace waring
