#pragma once

#include <string>
#include <vector>

#include "waring/arith.hpp"

namespace waring {

struct PrimePower {
  u64 prime = 0;
  unsigned exponent = 0;

  u64 value() const { return checked_pow(prime, exponent); }
  bool operator==(const PrimePower&) const = default;
};

/// A positive modulus together with its prime factorization.
///
/// Invariants: primes strictly increasing, exponents >= 1, and the product of
/// the prime powers equals value(). The empty factor list represents 1.
class FactoredModulus {
 public:
  FactoredModulus() = default;

  /// Factors n (1 <= n <= 2^63 - 1).
  explicit FactoredModulus(u64 n);

  /// Builds from an explicit factor list; validates ordering and product.
  static FactoredModulus from_factors(std::vector<PrimePower> factors);

  u64 value() const { return value_; }
  const std::vector<PrimePower>& factors() const { return factors_; }
  bool square_free() const;
  bool operator==(const FactoredModulus& other) const { return value_ == other.value_; }

  std::string to_string() const;

 private:
  u64 value_ = 1;
  std::vector<PrimePower> factors_;
};

/// Pollard-rho backed factorization of 1 <= n <= 2^63 - 1.
FactoredModulus factorize(u64 n);

}  // namespace waring
