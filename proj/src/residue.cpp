#include "waring/residue.hpp"

#include <algorithm>

namespace waring {

unsigned tau(u64 k, u64 p) {
  require(k >= 1, "tau: k must be positive");
  require(is_prime(p), "tau: p must be prime");
  unsigned h = 0;
  while (k % p == 0) {
    k /= p;
    ++h;
  }
  return h;
}

unsigned eta(unsigned k, u64 p) {
  require(k >= 1 && is_prime(p), "eta: need k >= 1 and p prime");
  require(k % (p - 1) == 0, "eta(k, p) is only defined when (p - 1) | k");
  const unsigned t = tau(k, p);
  return (p == 2 && t > 0) ? t + 2 : t + 1;
}

unsigned omega(u64 n) {
  require(n >= 1, "omega: n must be positive");
  return static_cast<unsigned>(factorize(n).factors().size());
}

KContext build_k_context(unsigned k) {
  if (k < 2 || k > 12) throw RangeError("k must lie in [2, 12], got " + std::to_string(k));
  KContext ctx;
  ctx.k = k;
  for (u64 p : primes_up_to(k + 1)) {
    if (k % (p - 1) != 0) continue;
    const unsigned e = eta(k, p);
    ctx.eta_table[p] = e;
    ctx.R_k *= checked_pow(p, e);
  }
  ctx.omega_k = omega(k);
  return ctx;
}

namespace {

ResidueSet prime_power_classes(u64 p, unsigned e, unsigned k, bool units_only) {
  const u64 m = checked_pow(p, e, ResidueSet::kMaxModulus);
  ResidueSet s(FactoredModulus::from_factors({{p, e}}));
  for (u64 t = 0; t < m; ++t) {
    if (units_only && t % p == 0) continue;
    s.insert(pow_mod(t, k, m));
  }
  return s;
}

// CRT product of class sets over the prime-power factors of q.
ResidueSet crt_product(const FactoredModulus& q, unsigned k, bool units_only) {
  if (q.value() > ResidueSet::kMaxModulus) {
    throw RangeError("residue sets are limited to moduli <= 2^26");
  }
  std::vector<u64> acc{0};
  u64 acc_mod = 1;
  for (const auto& f : q.factors()) {
    const u64 m = f.value();
    const auto part = prime_power_classes(f.prime, f.exponent, k, units_only).members();
    std::vector<u64> next;
    next.reserve(acc.size() * part.size());
    for (u64 a : acc) {
      for (u64 b : part) {
        Congruence cs[2] = {{a, acc_mod}, {b, m}};
        next.push_back(crt_combine(cs).residue);
      }
    }
    acc = std::move(next);
    acc_mod *= m;
  }
  if (units_only && q.value() == 1) acc = {0};
  return ResidueSet::from_members(q, acc);
}

}  // namespace

ResidueSet kth_power_classes(const FactoredModulus& q, unsigned k) {
  return crt_product(q, k, false);
}

ResidueSet unit_kth_power_classes(const FactoredModulus& q, unsigned k) {
  return crt_product(q, k, true);
}

u64 size_Z_formula(u64 p, unsigned e, unsigned k) {
  require(e >= 1, "size_Z_formula: exponent must be at least 1");
  require(k >= 1, "size_Z_formula: k must be positive");
  const u64 phi = euler_phi_prime_power(p, e);
  return phi / std::gcd<u64>(k, phi);
}

u64 unit_power_class_count(u64 p, unsigned e, unsigned k) {
  require(e >= 1 && k >= 1, "unit_power_class_count: need e >= 1, k >= 1");
  if (p != 2 || e < 3) return size_Z_formula(p, e, k);
  // Z_{2^e}^* = <-1> x <5>, of orders 2 and 2^(e-2).
  const u64 big = checked_pow(2, e - 2);
  return (2 / std::gcd<u64>(k, 2)) * (big / std::gcd<u64>(k, big));
}

Congruence crt_combine(std::span<const Congruence> parts) {
  Congruence acc{0, 1};
  for (const auto& c : parts) {
    require(c.modulus >= 1, "crt_combine: moduli must be positive");
    require(std::gcd(acc.modulus, c.modulus) == 1,
            "crt_combine: moduli " + std::to_string(acc.modulus) + " and " +
                std::to_string(c.modulus) + " are not coprime");
    const u64 m = checked_mul(acc.modulus, c.modulus);
    // x = acc.residue + acc.modulus * t with t = (c - acc.residue) / acc.modulus mod c.modulus
    const u64 inv = *inverse_mod(acc.modulus % c.modulus, c.modulus);
    const u64 diff = (c.residue % c.modulus + c.modulus - acc.residue % c.modulus) % c.modulus;
    const u64 t = mul_mod(diff, inv, c.modulus);
    acc.residue = static_cast<u64>((static_cast<u128>(acc.modulus) * t + acc.residue) % m);
    acc.modulus = m;
  }
  return acc;
}

WContext::WContext(unsigned k, unsigned w) : k_(k), w_(w) {
  require(k >= 2, "WContext: k must be at least 2");
  require(w >= 2, "WContext: w must be at least 2");
  std::vector<PrimePower> factors;
  for (u64 p : primes_up_to(w)) {
    const u64 pk = checked_pow(p, k);
    if (pk > kMaxPrimePower) {
      throw RangeError("W-trick prime power " + std::to_string(p) + "^" + std::to_string(k) +
                       " exceeds the tabulation limit 10^6");
    }
    factors.push_back({p, k});
    std::vector<u64> table(pk, 0);
    for (u64 z = 0; z < pk; ++z) ++table[pow_mod(z, k, pk)];
    tables_.push_back(std::move(table));
  }
  W_ = FactoredModulus::from_factors(std::move(factors));
}

u64 WContext::sigma(u64 b) const {
  require(b < W_.value(), "sigma_W: residue must lie in [0, W)");
  u64 count = 1;
  for (std::size_t i = 0; i < tables_.size(); ++i) {
    count *= tables_[i][b % tables_[i].size()];
  }
  return count;
}

u64 WContext::sigma_by_enumeration(u64 b) const {
  const u64 W = W_.value();
  require(b < W, "sigma_W: residue must lie in [0, W)");
  if (W > 10'000'000) throw RangeError("enumeration of sigma_W limited to W <= 10^7");
  u64 count = 0;
  for (u64 z = 0; z < W; ++z) count += pow_mod(z, k_, W) == b;
  return count;
}

}  // namespace waring
