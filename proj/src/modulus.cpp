#include "waring/modulus.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace waring {
namespace {

u64 pollard_rho(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 x = 2, y = 2, d = 1;
    auto f = [&](u64 v) { return add_mod(mul_mod(v, v, n), c, n); };
    while (d == 1) {
      x = f(x);
      y = f(f(y));
      d = std::gcd(x > y ? x - y : y - x, n);
    }
    if (d != n) return d;
  }
}

void collect_factors(u64 n, std::map<u64, unsigned>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    ++out[n];
    return;
  }
  for (u64 p : {2, 3, 5, 7, 11, 13}) {
    if (n % p == 0) {
      ++out[p];
      collect_factors(n / p, out);
      return;
    }
  }
  u64 d = pollard_rho(n);
  collect_factors(d, out);
  collect_factors(n / d, out);
}

}  // namespace

FactoredModulus::FactoredModulus(u64 n) {
  require(n >= 1, "modulus must be positive");
  require(n <= kMaxModulus, "modulus exceeds 2^63 - 1");
  std::map<u64, unsigned> counts;
  collect_factors(n, counts);
  for (auto [p, e] : counts) factors_.push_back({p, e});
  value_ = n;
}

FactoredModulus FactoredModulus::from_factors(std::vector<PrimePower> factors) {
  FactoredModulus m;
  u64 value = 1;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const auto& f = factors[i];
    require(f.exponent >= 1, "prime exponent must be at least 1");
    require(is_prime(f.prime), "factor " + std::to_string(f.prime) + " is not prime");
    require(i == 0 || factors[i - 1].prime < f.prime, "primes must be strictly increasing");
    value = checked_mul(value, f.value());
  }
  m.value_ = value;
  m.factors_ = std::move(factors);
  return m;
}

bool FactoredModulus::square_free() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const PrimePower& f) { return f.exponent == 1; });
}

std::string FactoredModulus::to_string() const {
  std::ostringstream os;
  os << value_;
  if (factors_.empty()) return os.str();
  os << " = ";
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (i) os << " * ";
    os << factors_[i].prime;
    if (factors_[i].exponent > 1) os << '^' << factors_[i].exponent;
  }
  return os.str();
}

FactoredModulus factorize(u64 n) { return FactoredModulus(n); }

}  // namespace waring
