#include "waring/zk.hpp"

#include <cmath>

#include "waring/residue.hpp"

namespace waring::zk {
namespace {

// 1/|Z(p^k)| in long double, valid for primes far beyond the 64-bit range of
// p^k. gcd(k, phi) is read off phi mod k.
long double inverse_class_count(u64 p, unsigned k, Convention convention) {
  if (p == 2 && convention == Convention::exact) {
    return 1.0L / static_cast<long double>(unit_power_class_count(2, k, k));
  }
  const u64 phi_mod_k = mul_mod(pow_mod(p % k, k - 1, k), (p - 1) % k, k);
  const u64 g = std::gcd<u64>(k, phi_mod_k);
  const long double phi =
      std::pow(static_cast<long double>(p), static_cast<long double>(k - 1)) *
      static_cast<long double>(p - 1);
  return static_cast<long double>(g) / phi;
}

// One unit in the 12th significant digit for the whole product chain. The
// sum of logs runs in long double over fewer than 10^6 terms, so its
// accumulated relative error stays below 10^-13.
constexpr long double kUlp12 = 1e-12L;

}  // namespace

double local_factor(u64 p, unsigned k, Convention convention) {
  require(k >= 2, "local_factor: k must be at least 2");
  require(is_prime(p), "local_factor: p must be prime");
  return static_cast<double>(1.0L + inverse_class_count(p, k, convention));
}

double tail_log_bound(unsigned k, u64 P) {
  // Every prime p > P has |Z(p^k)| = p^{k-1}(p-1)/gcd(k, phi) >= (p-1)^k / k,
  // and log(1 + x) <= x, so the tail is at most k sum_{m >= P} m^{-k}.
  const long double Pk = std::pow(static_cast<long double>(P), static_cast<long double>(k));
  return static_cast<double>(k * (1.0L / Pk + static_cast<long double>(P) / Pk / (k - 1)));
}

ZkEstimate zk_enclosure_at(unsigned k, u64 P, Convention convention) {
  require(k >= 2 && k <= 12, "zk: k must lie in [2, 12]");
  require(P >= 2, "zk: truncation prime must be at least 2");
  ZkEstimate est;
  est.k = k;
  est.convention = convention;
  long double log_sum = 0;
  u64 last = 2;
  for (u64 p : primes_up_to(P)) {
    log_sum += std::log1p(inverse_class_count(p, k, convention));
    last = p;
  }
  est.truncation_prime = last;
  est.tail_log_bound = tail_log_bound(k, last);
  est.lower = static_cast<double>(std::exp(log_sum) * (1.0L - kUlp12));
  est.upper = static_cast<double>(std::exp(log_sum + est.tail_log_bound) * (1.0L + kUlp12));
  // Guard the final narrowing to double.
  est.lower = std::nextafter(est.lower, 0.0);
  est.upper = std::nextafter(est.upper, 1e300);
  return est;
}

ZkEstimate zk_estimate(unsigned k, double precision, Convention convention, u64 max_prime) {
  require(precision >= 1e-8, "zk_estimate: precision must be at least 1e-8");
  require(max_prime >= 64, "zk_estimate: max_prime must be at least 64");
  ZkEstimate best;
  for (u64 P = 64;; P *= 2) {
    if (P > max_prime) P = max_prime;
    best = zk_enclosure_at(k, P, convention);
    if (best.width() <= precision) {
      best.converged = true;
      return best;
    }
    if (P == max_prime) return best;
  }
}

double zeta(double s) {
  require(s > 1.0, "zeta: s must exceed 1");
  constexpr int N = 1000;
  long double sum = 0;
  for (int n = N - 1; n >= 1; --n) sum += std::pow(static_cast<long double>(n), -s);
  const long double n = N;
  const long double ns = std::pow(n, static_cast<long double>(-s));
  // Euler-Maclaurin from N to infinity with B2 and B4 corrections.
  sum += n * ns / (s - 1) + ns / 2 + s * ns / n / 12 - s * (s + 1) * (s + 2) * ns / (n * n * n) / 720;
  return static_cast<double>(sum);
}

ZetaSandwich zeta_sandwich(unsigned k) {
  require(k >= 2, "zeta_sandwich: k must be at least 2");
  ZetaSandwich out;
  out.lower = zeta(k) / zeta(2.0 * k);
  const double a = k - std::log2(2.0 * k);
  if (a > 1.0) out.upper = zeta(a) / zeta(2 * a);
  return out;
}

std::optional<double> reference_value(unsigned k) {
  static constexpr double table[] = {3.279, 1.493, 1.570, 1.071, 1.075, 1.016, 1.062, 1.004};
  if (k < 2 || k > 9) return std::nullopt;
  return table[k - 2];
}

}  // namespace waring::zk
