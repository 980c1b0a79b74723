#pragma once

// Certified enclosures of the constant Z_k = prod_p (1 + 1/|Z(p^k)|).

#include <optional>

#include "waring/arith.hpp"

namespace waring::zk {

/// How |Z(p^k)| is evaluated inside the Euler product.
enum class Convention {
  /// phi(p^k) / gcd(k, phi(p^k)) for every prime. This is the convention the
  /// published table of Z_k values follows.
  cyclic_formula,
  /// The true count of unit k-th power classes; differs from the formula
  /// only at p = 2 for even k >= 4 (and k = 2 is unaffected since 2^2 = 4).
  exact,
};

/// 1 + 1 / |Z(p^k)| under the given convention.
double local_factor(u64 p, unsigned k, Convention convention = Convention::cyclic_formula);

struct ZkEstimate {
  unsigned k = 0;
  double lower = 0;
  double upper = 0;
  u64 truncation_prime = 0;
  /// Upper bound for sum_{p > P} log local_factor(p, k).
  double tail_log_bound = 0;
  /// False when the requested width was not reached with P <= max_prime.
  bool converged = false;
  Convention convention = Convention::cyclic_formula;

  double width() const { return upper - lower; }
  bool contains(double x) const { return lower <= x && x <= upper; }
};

inline constexpr u64 kMaxTruncationPrime = 10'000'000;

/// Enclosure at a fixed truncation prime P.
ZkEstimate zk_enclosure_at(unsigned k, u64 P, Convention convention = Convention::cyclic_formula);

/// Doubles P (starting at 64) until upper - lower <= precision.
ZkEstimate zk_estimate(unsigned k, double precision,
                       Convention convention = Convention::cyclic_formula,
                       u64 max_prime = kMaxTruncationPrime);

/// Tail bound k (P^{-k} + P^{1-k} / (k - 1)) >= sum_{p > P} 1/|Z(p^k)|.
double tail_log_bound(unsigned k, u64 P);

/// Riemann zeta for real s > 1 (Euler-Maclaurin, absolute error < 1e-12).
double zeta(double s);

struct ZetaSandwich {
  double lower = 0;
  std::optional<double> upper;
};

/// zeta(k)/zeta(2k) and, when k - log2(2k) > 1, the matching upper bound.
ZetaSandwich zeta_sandwich(unsigned k);

/// Reference values of Z_2 .. Z_9 as published (three to four digits).
std::optional<double> reference_value(unsigned k);

}  // namespace waring::zk
