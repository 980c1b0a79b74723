#include "waring/local.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>
#include <thread>

#include "waring/rng.hpp"

namespace waring::local {
namespace {

// Count thresholds compare against real products such as (2/7) * 7; allow
// for the representation error of the rational input.
bool at_least(double count, double threshold) { return count >= threshold * (1 - 1e-12) - 1e-12; }

const FactoredModulus& common_modulus(std::span<const ResidueSet> blocks) {
  require(!blocks.empty(), "need at least one block");
  for (const auto& b : blocks) {
    require(b.modulus() == blocks[0].modulus(), "blocks have different moduli");
  }
  return blocks[0].factored_modulus();
}

void require_square_free(const FactoredModulus& q) {
  require(q.square_free(), "modulus " + q.to_string() + " is not square-free");
}

}  // namespace

ResidueSet sumset(const ResidueSet& A, const ResidueSet& B) {
  require(A.modulus() == B.modulus(), "sumset: moduli differ");
  const ResidueSet& small = A.size() <= B.size() ? A : B;
  const ResidueSet& large = A.size() <= B.size() ? B : A;
  ResidueSet out(A.factored_modulus());
  small.for_each([&](u64 a) { out.or_shifted(large, a); });
  return out;
}

ResidueSet iterated_sumset(const ResidueSet& A, unsigned s) {
  require(s >= 1, "iterated_sumset: s must be at least 1");
  std::optional<ResidueSet> result;
  ResidueSet power = A;
  for (;;) {
    if (s & 1) result = result ? sumset(*result, power) : power;
    s >>= 1;
    if (!s) break;
    power = sumset(power, power);
  }
  return *result;
}

std::vector<u64> cyclic_convolution_counts(const ResidueSet& A, const ResidueSet& B) {
  require(A.modulus() == B.modulus(), "convolution: moduli differ");
  const u64 q = A.modulus();
  std::vector<u64> c(q, 0);
  const auto bs = B.members();
  A.for_each([&](u64 a) {
    for (u64 b : bs) ++c[add_mod(a, b, q)];
  });
  return c;
}

ResidueSet thresholded_sumset(const ResidueSet& A, const ResidueSet& B, double eta) {
  require(eta > 0 && eta < 1, "thresholded_sumset: eta must lie in (0, 1)");
  const auto c = cyclic_convolution_counts(A, B);
  const double threshold = eta * static_cast<double>(A.modulus());
  ResidueSet out(A.factored_modulus());
  for (u64 n = 0; n < c.size(); ++n) {
    if (c[n] > 0 && at_least(static_cast<double>(c[n]), threshold)) out.insert(n);
  }
  return out;
}

std::vector<u64> thresholded_sumset_interval(std::span<const u64> A, std::span<const u64> B,
                                             double eta, u64 N) {
  require(eta > 0 && eta < 1, "thresholded_sumset_interval: eta must lie in (0, 1)");
  std::map<u64, u64> counts;
  for (u64 a : A)
    for (u64 b : B) ++counts[a + b];
  const double threshold = eta * static_cast<double>(N);
  std::vector<u64> out;
  for (auto [n, c] : counts) {
    if (at_least(static_cast<double>(c), threshold)) out.push_back(n);
  }
  return out;
}

bool cd_applicable(u64 p, const ResidueSet& A, const ResidueSet& B, double eta) {
  const double m = std::sqrt(eta) * static_cast<double>(p);
  return at_least(static_cast<double>(A.size()), m) && at_least(static_cast<double>(B.size()), m);
}

CdResult verify_quantitative_cd(u64 p, const ResidueSet& A, const ResidueSet& B, double eta) {
  require(is_prime(p) && A.modulus() == p && B.modulus() == p,
          "quantitative Cauchy-Davenport: sets must live in Z_p for a prime p");
  require(eta > 0 && eta < 1, "quantitative Cauchy-Davenport: eta must lie in (0, 1)");
  require(cd_applicable(p, A, B, eta),
          "quantitative Cauchy-Davenport: |A|, |B| >= sqrt(eta) p fails");
  CdResult r;
  r.lhs = static_cast<i64>(thresholded_sumset(A, B, eta).size());
  const i64 base = static_cast<i64>(std::min<u64>(p, A.size() + B.size() - 1));
  r.rhs = base - static_cast<i64>(std::ceil(3 * std::sqrt(eta) * static_cast<double>(p) - 1e-12));
  r.bound_holds = r.lhs >= r.rhs;
  return r;
}

GenCdResult verify_gen_cd(u64 p, std::span<const ResidueSet> blocks, double eps) {
  require(is_prime(p), "generalized Cauchy-Davenport: p must be prime");
  const auto& q = common_modulus(blocks);
  require(q.value() == p, "generalized Cauchy-Davenport: blocks must live in Z_p");
  const double s = static_cast<double>(blocks.size());
  const double pd = static_cast<double>(p);
  require(blocks.size() >= 2, "generalized Cauchy-Davenport: need s >= 2 blocks");
  require(eps > 2 * s / pd, "generalized Cauchy-Davenport: eps must exceed 2s/p");
  u64 total = 0;
  for (const auto& b : blocks) {
    require(static_cast<double>(b.size()) > eps / s * pd,
            "generalized Cauchy-Davenport: some |B_i| <= (eps/s) p");
    total += b.size();
  }
  require(static_cast<double>(total) > (1 + eps) * pd,
          "generalized Cauchy-Davenport: sum |B_i| <= (1 + eps) p");

  std::vector<u64> conv(p, 0);
  blocks[0].for_each([&](u64 x) { conv[x] = 1; });
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    std::vector<u64> next(p, 0);
    const auto members = blocks[i].members();
    for (u64 n = 0; n < p; ++n) {
      if (!conv[n]) continue;
      for (u64 b : members) {
        u64& slot = next[add_mod(n, b, p)];
        if (__builtin_add_overflow(slot, conv[n], &slot)) {
          throw RangeError("generalized Cauchy-Davenport: convolution count overflow");
        }
      }
    }
    conv = std::move(next);
  }
  GenCdResult r;
  r.min_conv = *std::min_element(conv.begin(), conv.end());
  const double eta = eps / (6 * s * s);
  r.bound = eps / 4 * std::pow(eta, 2 * (s - 2)) * std::pow(pd, s - 1);
  r.holds = r.min_conv > 0;
  return r;
}

std::optional<u64> coset_witness(const ResidueSet& A) {
  require(!A.empty(), "coset_witness: empty set");
  const u64 q = A.modulus();
  const u64 b0 = A.first();
  u64 g = q;
  A.for_each([&](u64 b) { g = std::gcd(g, b - b0); });
  if (g > 1) return g;
  return std::nullopt;
}

CochraneResult cochrane_check(std::span<const ResidueSet> blocks) {
  const auto& q = common_modulus(blocks);
  u64 total = 0;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    require(!blocks[i].empty(), "Cochrane check: empty block");
    if (auto d = coset_witness(blocks[i])) {
      throw PreconditionError("Cochrane check: block " + std::to_string(i) +
                              " lies in a coset of the subgroup " + std::to_string(*d) +
                              "Z_" + std::to_string(q.value()) + " (witness divisor " +
                              std::to_string(*d) + ")");
    }
    total += blocks[i].size();
  }
  ResidueSet sum = blocks[0];
  for (std::size_t i = 1; i < blocks.size(); ++i) sum = sumset(sum, blocks[i]);
  const u64 n = blocks.size();
  CochraneResult r;
  r.lhs = sum.size();
  // ceil((1/2 + 1/(2n)) total) = ceil((n + 1) total / (2n))
  r.rhs = std::min<u64>(q.value(), ((n + 1) * total + 2 * n - 1) / (2 * n));
  r.holds = r.lhs >= r.rhs;
  return r;
}

CrtVector CrtVector::of(const FactoredModulus& q, u64 x) {
  require_square_free(q);
  CrtVector v{q, {}};
  for (const auto& f : q.factors()) v.coords.push_back(x % f.prime);
  return v;
}

u64 CrtVector::to_residue() const {
  require_square_free(modulus);
  require(coords.size() == modulus.factors().size(), "CrtVector: wrong number of coordinates");
  std::vector<Congruence> parts;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    const u64 p = modulus.factors()[i].prime;
    require(coords[i] < p, "CrtVector: coordinate out of range");
    parts.push_back({coords[i], p});
  }
  return crt_combine(parts).residue;
}

ResidueSet downset_D(const CrtVector& v) {
  require_square_free(v.modulus);
  require(v.coords.size() == v.modulus.factors().size(), "downset_D: wrong number of coordinates");
  const auto& fs = v.modulus.factors();
  ResidueSet out(v.modulus);
  for (u64 b = 0; b < v.modulus.value(); ++b) {
    bool inside = true;
    for (std::size_t i = 0; i < fs.size() && inside; ++i) inside = b % fs[i].prime <= v.coords[i];
    if (inside) out.insert(b);
  }
  return out;
}

std::vector<u64> residue_counts(const ResidueSet& A) {
  const auto& q = A.factored_modulus();
  require_square_free(q);
  std::vector<u64> r;
  for (const auto& f : q.factors()) {
    std::vector<bool> seen(f.prime, false);
    A.for_each([&](u64 x) { seen[x % f.prime] = true; });
    r.push_back(static_cast<u64>(std::count(seen.begin(), seen.end(), true)));
  }
  return r;
}

CrtVector u_of(const ResidueSet& A) {
  require(!A.empty(), "u_of: empty set");
  CrtVector v{A.factored_modulus(), residue_counts(A)};
  for (std::size_t i = 0; i < v.coords.size(); ++i) v.coords[i] %= v.modulus.factors()[i].prime;
  return v;
}

bool u_of_wraps(const ResidueSet& A) {
  const auto r = residue_counts(A);
  const auto& fs = A.factored_modulus().factors();
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] == fs[i].prime) return true;
  }
  return false;
}

namespace {

// e_i = 1 (mod p_i), 0 (mod p_j) for j != i.
std::vector<u64> crt_idempotents(const FactoredModulus& q) {
  std::vector<u64> e;
  for (const auto& f : q.factors()) {
    const u64 rest = q.value() / f.prime;
    e.push_back(rest * *inverse_mod(rest % f.prime, f.prime) % q.value());
  }
  return e;
}

}  // namespace

bool is_downset(const ResidueSet& A) {
  const auto& q = A.factored_modulus();
  require_square_free(q);
  const auto e = crt_idempotents(q);
  bool ok = true;
  A.for_each([&](u64 x) {
    for (std::size_t i = 0; i < e.size() && ok; ++i) {
      if (x % q.factors()[i].prime == 0) continue;
      ok = A.contains((x + q.value() - e[i]) % q.value());
    }
  });
  return ok;
}

std::vector<ResidueSet> downset_transform(std::span<const ResidueSet> blocks) {
  const FactoredModulus q = common_modulus(blocks);
  require_square_free(q);
  const auto e = crt_idempotents(q);
  std::vector<ResidueSet> out(blocks.begin(), blocks.end());
  for (std::size_t i = 0; i < q.factors().size(); ++i) {
    const u64 p = q.factors()[i].prime;
    const u64 rest = q.value() / p;
    for (auto& block : out) {
      // The fiber through x is determined by x mod (q/p). Its base point
      // (coordinate 0 at p) is x - (x mod p) e_i.
      std::vector<u64> fiber_size(rest, 0);
      std::vector<u64> base(rest, 0);
      block.for_each([&](u64 x) {
        const u64 key = x % rest;
        ++fiber_size[key];
        base[key] = (x + q.value() - mul_mod(x % p, e[i], q.value())) % q.value();
      });
      ResidueSet compressed(q);
      for (u64 key = 0; key < rest; ++key) {
        for (u64 j = 0; j < fiber_size[key]; ++j) {
          compressed.insert((base[key] + mul_mod(j, e[i], q.value())) % q.value());
        }
      }
      block = std::move(compressed);
    }
  }
  return out;
}

DownsetReport downset_report(std::span<const ResidueSet> blocks) {
  DownsetReport r;
  r.before.assign(blocks.begin(), blocks.end());
  r.after = downset_transform(blocks);
  const FactoredModulus& q = r.before.front().factored_modulus();
  r.cardinality_preserved = true;
  r.downsets = true;
  r.upper_bound = true;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    r.cardinality_preserved = r.cardinality_preserved && r.after[i].size() == r.before[i].size();
    r.downsets = r.downsets && is_downset(r.after[i]);
    if (r.before[i].empty()) continue;
    if (u_of_wraps(r.before[i])) {
      r.any_wraps = true;
      continue;
    }
    const auto u = residue_counts(r.before[i]);
    r.after[i].for_each([&](u64 x) {
      const auto c = CrtVector::of(q, x).coords;
      for (std::size_t j = 0; j < c.size(); ++j) r.upper_bound = r.upper_bound && c[j] < u[j];
    });
  }
  ResidueSet sb = r.before[0], sa = r.after[0];
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    sb = sumset(sb, r.before[i]);
    sa = sumset(sa, r.after[i]);
  }
  r.sumset_size_before = sb.size();
  r.sumset_size_after = sa.size();
  r.sumset_not_larger = r.sumset_size_after <= r.sumset_size_before;
  return r;
}

ResidueSet waring_target(const FactoredModulus& q, unsigned s, const KContext& kctx) {
  const u64 d = std::gcd(kctx.R_k, q.value());
  ResidueSet t(q);
  for (u64 a = s % d; a < q.value(); a += d) t.insert(a);
  ensure(!t.empty(), "Waring target class is empty");
  return t;
}

bool check_majority_set(const ResidueSet& A, unsigned s, const ResidueSet& target,
                        u64* offending) {
  const ResidueSet sA = iterated_sumset(A, s);
  if (sA == target) return true;
  if (offending) {
    for (u64 x = 0; x < target.modulus(); ++x) {
      if (sA.contains(x) != target.contains(x)) {
        *offending = x;
        break;
      }
    }
  }
  return false;
}

namespace {

ResidueSet subset_from_mask(const FactoredModulus& q, const std::vector<u64>& elems, u64 mask) {
  ResidueSet A(q);
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (mask >> i & 1) A.insert(elems[i]);
  }
  return A;
}

struct ChunkResult {
  std::optional<u64> mask;
  u64 missing = 0;
};

}  // namespace

WaringPairReport waring_pair_exhaustive(const FactoredModulus& q, unsigned s,
                                        const KContext& kctx, ExhaustiveOptions options) {
  require(s >= 1, "Waring pair: s must be at least 1");
  const ResidueSet Z = unit_kth_power_classes(q, kctx.k);
  std::vector<u64> elems = Z.members();
  const u64 m = elems.size();
  if (m > kMaxExhaustiveClasses) {
    throw RangeError("exhaustive Waring check needs |Z(q)| <= 24, got " + std::to_string(m) +
                     "; use the randomized variant");
  }
  if (options.permutation_seed) {
    Rng rng(*options.permutation_seed);
    for (u64 i = m; i > 1; --i) std::swap(elems[i - 1], elems[rng.uniform_below(i)]);
  }
  const ResidueSet target = waring_target(q, s, kctx);

  // Subsets are visited in increasing mask order; the canonical
  // counterexample is the one with the smallest mask.
  const u64 total = u64{1} << m;
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, 64));
  const u64 chunk = (total + threads - 1) / threads;
  std::vector<ChunkResult> results(threads);
  std::atomic<u64> best_found{total};
  auto work = [&](unsigned t) {
    const u64 lo = t * chunk, hi = std::min(total, lo + chunk);
    for (u64 mask = lo; mask < hi; ++mask) {
      if (mask >= best_found.load(std::memory_order_relaxed)) return;
      if (2 * static_cast<u64>(std::popcount(mask)) <= m) continue;
      u64 missing = 0;
      if (!check_majority_set(subset_from_mask(q, elems, mask), s, target, &missing)) {
        results[t] = {mask, missing};
        u64 cur = best_found.load();
        while (mask < cur && !best_found.compare_exchange_weak(cur, mask)) {
        }
        return;
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }

  WaringPairReport report{q, s, kctx.k, true, std::nullopt, 0, true};
  u64 limit = total;
  for (const auto& r : results) {
    if (r.mask) {
      report.holds = false;
      report.counterexample = Counterexample{subset_from_mask(q, elems, *r.mask), r.missing};
      limit = *r.mask + 1;
      break;
    }
  }
  // Number of majority subsets with mask < limit, independent of threading.
  for (u64 mask = 0; mask < limit; ++mask) {
    if (2 * static_cast<u64>(std::popcount(mask)) > m) ++report.sets_checked;
  }
  return report;
}

WaringPairReport waring_pair_random(const FactoredModulus& q, unsigned s, const KContext& kctx,
                                    u64 trials, u64 seed) {
  require(trials >= 1, "Waring pair: trials must be at least 1");
  require(s >= 1, "Waring pair: s must be at least 1");
  const auto elems = unit_kth_power_classes(q, kctx.k).members();
  const ResidueSet target = waring_target(q, s, kctx);
  Rng rng(seed);
  WaringPairReport report{q, s, kctx.k, true, std::nullopt, 0, false};
  for (u64 trial = 0; trial < trials; ++trial) {
    ResidueSet A(q);
    u64 count = 0;
    do {
      A = ResidueSet(q);
      count = 0;
      for (u64 x : elems) {
        if (rng.next() >> 63) {
          A.insert(x);
          ++count;
        }
      }
    } while (2 * count <= elems.size());
    ++report.sets_checked;
    u64 missing = 0;
    if (!check_majority_set(A, s, target, &missing)) {
      report.holds = false;
      report.counterexample = Counterexample{std::move(A), missing};
      break;
    }
  }
  return report;
}

WaringPairReport check_waring_pair(const FactoredModulus& q, unsigned s, const KContext& kctx,
                                   u64 trials, u64 seed, unsigned threads) {
  const u64 m = unit_kth_power_classes(q, kctx.k).size();
  if (m <= kMaxExhaustiveClasses) {
    return waring_pair_exhaustive(q, s, kctx, {threads, std::nullopt});
  }
  return waring_pair_random(q, s, kctx, trials, seed);
}

bool combine_waring_pairs_check(const FactoredModulus& q, const FactoredModulus& r, unsigned s,
                                unsigned t, const KContext& kctx, unsigned threads) {
  require(std::gcd(q.value(), r.value()) == 1, "combine: moduli " + std::to_string(q.value()) +
                                                   " and " + std::to_string(r.value()) +
                                                   " are not coprime");
  require(check_waring_pair(q, s, kctx, 2000, 1, threads).holds,
          "combine: (" + std::to_string(q.value()) + ", " + std::to_string(s) +
              ") is not a verified Waring pair");
  require(check_waring_pair(r, t, kctx, 2000, 1, threads).holds,
          "combine: (" + std::to_string(r.value()) + ", " + std::to_string(t) +
              ") is not a verified Waring pair");
  const FactoredModulus qr(checked_mul(q.value(), r.value()));
  return check_waring_pair(qr, s + t, kctx, 2000, 1, threads).holds;
}

MinimalSReport minimal_s(const FactoredModulus& q, const KContext& kctx, unsigned s_max,
                         unsigned threads) {
  MinimalSReport out;
  for (unsigned s = 1; s <= s_max; ++s) {
    out.certificates.push_back(check_waring_pair(q, s, kctx, 2000, 1, threads));
    if (out.certificates.back().holds) {
      out.s = s;
      break;
    }
  }
  return out;
}

bool hensel_solvable(u64 a, u64 c, const FactoredModulus& q, unsigned e, unsigned k) {
  require_square_free(q);
  require(e >= 1 && k >= 1, "hensel_solvable: need e >= 1, k >= 1");
  require(std::gcd<u64>(q.value(), k) == 1, "hensel_solvable: gcd(q, k) must be 1");
  const u64 qv = q.value();
  const u64 qe = checked_pow(qv, e);
  require(c < qe / qv, "hensel_solvable: c must lie in [0, q^(e-1))");
  require(std::gcd(a % qv, qv) == 1, "hensel_solvable: a must be a unit mod q");
  const u64 target = (a % qv + static_cast<u64>(static_cast<u128>(c) * qv % qe)) % qe;

  std::vector<Congruence> roots;
  for (const auto& f : q.factors()) {
    const u64 p = f.prime;
    if (p > 10'000'000) throw RangeError("hensel_solvable: prime factor too large to enumerate");
    std::optional<u64> x0;
    for (u64 x = 1; x < p && !x0; ++x) {
      if (pow_mod(x, k, p) == target % p) x0 = x;
    }
    require(x0.has_value(), "hensel_solvable: a is not a k-th power residue mod " +
                                std::to_string(p));
    // Newton: x <- x - (x^k - T) / (k x^{k-1}) mod p^j, doubling precision.
    const u64 pe = checked_pow(p, e);
    u64 x = *x0;
    for (u64 mod = p; mod < pe;) {
      mod = static_cast<u64>(std::min<u128>(static_cast<u128>(mod) * mod, pe));
      const u64 fx = (pow_mod(x, k, mod) + mod - target % mod) % mod;
      const u64 dfx = mul_mod(k % mod, pow_mod(x, k - 1, mod), mod);
      const auto inv = inverse_mod(dfx, mod);
      ensure(inv.has_value(), "hensel_solvable: derivative not invertible");
      x = (x + mod - mul_mod(fx, *inv, mod)) % mod;
    }
    if (pow_mod(x, k, pe) != target % pe) return false;
    roots.push_back({x, pe});
  }
  const u64 x = crt_combine(roots).residue;
  return pow_mod(x, k, qe) == target;
}

std::optional<std::vector<u64>> solve_representation(const ResidueSet& A, unsigned s, u64 n) {
  require(s >= 1, "solve_representation: s must be at least 1");
  const u64 q = A.modulus();
  n %= q;
  std::vector<ResidueSet> layers;
  ResidueSet zero(A.factored_modulus());
  zero.insert(0);
  layers.push_back(zero);
  for (unsigned i = 1; i <= s; ++i) layers.push_back(sumset(layers.back(), A));
  if (!layers[s].contains(n)) return std::nullopt;
  const auto members = A.members();
  std::vector<u64> out;
  u64 x = n;
  for (unsigned i = s; i >= 1; --i) {
    bool stepped = false;
    for (u64 a : members) {
      const u64 prev = (x + q - a) % q;
      if (layers[i - 1].contains(prev)) {
        out.push_back(a);
        x = prev;
        stepped = true;
        break;
      }
    }
    ensure(stepped, "solve_representation: back-tracking failed");
  }
  ensure(x == 0, "solve_representation: back-tracking did not reach 0");
  std::reverse(out.begin(), out.end());
  return out;
}

Selection mean_condition_selector(const std::map<u64, double>& f, u64 n, unsigned s,
                                  const WContext& ctx, const KContext& kctx) {
  require(ctx.k() == kctx.k, "selector: k differs between contexts");
  const FactoredModulus& W = ctx.W();
  const ResidueSet Z = unit_kth_power_classes(W, ctx.k());
  for (auto [b, v] : f) {
    require(b < W.value() && Z.contains(b), "selector: f is supported outside Z(W)");
    require(v >= 0 && v < 1, "selector: f must take values in [0, 1)");
  }
  auto value = [&](u64 b) {
    auto it = f.find(b);
    return it == f.end() ? 0.0 : it->second;
  };
  double total = 0;
  Z.for_each([&](u64 b) { total += value(b); });
  require(total / static_cast<double>(Z.size()) > 0.5, "selector: mean of f over Z(W) is <= 1/2");
  const unsigned k = kctx.k;
  const u64 s_min = 16 * k * kctx.omega_k + 4 * k + 4;
  require(s >= s_min, "selector: s must be at least " + std::to_string(s_min));
  const u64 d = std::gcd(kctx.R_k, W.value());
  require(n % d == s % d, "selector: n must be congruent to s modulo gcd(R_k, W) = " +
                              std::to_string(d));

  Selection sel;
  double mu = -1;
  Z.for_each([&](u64 b) {
    if (value(b) > mu) {
      mu = value(b);
      sel.b_star = b;
    }
  });
  sel.lambda = 1 - mu;
  ResidueSet A(W);
  Z.for_each([&](u64 b) {
    if (value(b) > sel.lambda) A.insert(b);
  });
  sel.s_prime = 8 * k * kctx.omega_k + 2 * k + 2;
  const u64 rest = s - sel.s_prime;
  const u64 Wv = W.value();
  const u64 target = (n % Wv + Wv - mul_mod(rest % Wv, sel.b_star, Wv)) % Wv;
  auto rep = solve_representation(A, static_cast<unsigned>(sel.s_prime), target);
  if (!rep) {
    std::ostringstream msg;
    msg << "selector: " << target << " is not a sum of " << sel.s_prime
        << " elements of the threshold set (|A| = " << A.size() << ", |Z(W)| = " << Z.size()
        << ", lambda = " << sel.lambda << "); (W, s') would not be a Waring pair";
    throw InvariantError(msg.str());
  }
  sel.b = std::move(*rep);
  sel.b.insert(sel.b.end(), rest, sel.b_star);
  u64 sum = 0;
  for (u64 b : sel.b) {
    sum = add_mod(sum, b, Wv);
    sel.weight += value(b);
    ensure(value(b) > 0, "selector: picked a class with f = 0");
  }
  ensure(sum == n % Wv, "selector: selection does not sum to n");
  ensure(sel.weight > s / 2.0, "selector: selection weight does not exceed s/2");
  return sel;
}

}  // namespace waring::local
