#pragma once

// Sumsets in Z_q and the local Waring-pair problem.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "waring/residue.hpp"

namespace waring::local {

ResidueSet sumset(const ResidueSet& A, const ResidueSet& B);

/// sA by repeated doubling.
ResidueSet iterated_sumset(const ResidueSet& A, unsigned s);

/// c(n) = #{(a, b) in A x B : a + b = n (mod q)}.
std::vector<u64> cyclic_convolution_counts(const ResidueSet& A, const ResidueSet& B);

/// {n in Z_q : 1_A * 1_B (n) >= eta q}, the cyclic threshold.
ResidueSet thresholded_sumset(const ResidueSet& A, const ResidueSet& B, double eta);

/// {n : 1_A * 1_B (n) >= eta N} for integer sets, the interval threshold.
/// A and B are subsets of the nonnegative integers; the result is sorted.
std::vector<u64> thresholded_sumset_interval(std::span<const u64> A, std::span<const u64> B,
                                             double eta, u64 N);

struct CdResult {
  bool bound_holds = false;
  i64 lhs = 0;
  i64 rhs = 0;
};

/// |A|, |B| >= sqrt(eta) p.
bool cd_applicable(u64 p, const ResidueSet& A, const ResidueSet& B, double eta);

/// |S_eta(A, B)| >= min(p, |A| + |B| - 1) - ceil(3 sqrt(eta) p).
CdResult verify_quantitative_cd(u64 p, const ResidueSet& A, const ResidueSet& B, double eta);

struct GenCdResult {
  u64 min_conv = 0;
  double bound = 0;
  bool holds = false;
};

/// Exact minimum over Z_p of 1_{B_1} * ... * 1_{B_s}.
GenCdResult verify_gen_cd(u64 p, std::span<const ResidueSet> blocks, double eps);

/// Divisor d > 1 of q such that A lies in a coset of d Z_q, if any.
std::optional<u64> coset_witness(const ResidueSet& A);

struct CochraneResult {
  bool holds = false;
  u64 lhs = 0;
  u64 rhs = 0;
};

CochraneResult cochrane_check(std::span<const ResidueSet> blocks);

/// Coordinates of a residue of a square-free modulus, one per prime in
/// increasing order.
struct CrtVector {
  FactoredModulus modulus;
  std::vector<u64> coords;

  static CrtVector of(const FactoredModulus& q, u64 x);
  u64 to_residue() const;
  bool operator==(const CrtVector&) const = default;
};

/// {b : 0 <= b mod p <= v_p for every p | q}.
ResidueSet downset_D(const CrtVector& v);

/// r(A, p) = number of residues mod p met by A, for each p | q.
std::vector<u64> residue_counts(const ResidueSet& A);

/// u(A), with coordinate r(A, p) mod p. A coordinate wraps to 0 exactly when
/// A meets every residue mod p; see u_of_wraps.
CrtVector u_of(const ResidueSet& A);
bool u_of_wraps(const ResidueSet& A);

/// Closed under coordinate-wise decrease.
bool is_downset(const ResidueSet& A);

/// Compresses every fiber along each prime (increasing order) to an initial
/// segment. All blocks must share one square-free modulus.
std::vector<ResidueSet> downset_transform(std::span<const ResidueSet> blocks);

struct DownsetReport {
  std::vector<ResidueSet> before;
  std::vector<ResidueSet> after;
  u64 sumset_size_before = 0;  ///< |A_1 + ... + A_s|
  u64 sumset_size_after = 0;
  bool cardinality_preserved = false;
  bool downsets = false;
  /// Every element of A'_i lies coordinate-wise below u(A_i). Only checked
  /// for blocks where u(A_i) does not wrap.
  bool upper_bound = false;
  bool any_wraps = false;
  bool sumset_not_larger = false;

  bool holds() const {
    return cardinality_preserved && downsets && upper_bound && sumset_not_larger;
  }
};

/// Runs downset_transform and checks the properties of its output.
DownsetReport downset_report(std::span<const ResidueSet> blocks);

struct Counterexample {
  ResidueSet A;
  u64 missing = 0;
};

struct WaringPairReport {
  FactoredModulus q;
  unsigned s = 0;
  unsigned k = 0;
  bool holds = false;
  std::optional<Counterexample> counterexample;
  u64 sets_checked = 0;
  bool exhaustive = false;
};

/// {a in Z_q : a = s (mod gcd(R_k, q))}.
ResidueSet waring_target(const FactoredModulus& q, unsigned s, const KContext& kctx);

/// True when sA equals the target; otherwise stores the smallest missing or
/// extra residue in `offending`.
bool check_majority_set(const ResidueSet& A, unsigned s, const ResidueSet& target,
                        u64* offending = nullptr);

inline constexpr u64 kMaxExhaustiveClasses = 24;

struct ExhaustiveOptions {
  unsigned threads = 1;
  /// When set, subsets of Z(q) are enumerated under this relabeling of its
  /// elements. Used to confirm verdicts do not depend on enumeration order.
  std::optional<u64> permutation_seed;
};

WaringPairReport waring_pair_exhaustive(const FactoredModulus& q, unsigned s,
                                        const KContext& kctx, ExhaustiveOptions options = {});

WaringPairReport waring_pair_random(const FactoredModulus& q, unsigned s, const KContext& kctx,
                                    u64 trials, u64 seed);

/// Exhaustive when |Z(q)| <= 24, otherwise `trials` random majority subsets.
WaringPairReport check_waring_pair(const FactoredModulus& q, unsigned s, const KContext& kctx,
                                   u64 trials = 2000, u64 seed = 1, unsigned threads = 1);

/// Confirms (q, s) and (r, t) first, then checks (qr, s + t).
bool combine_waring_pairs_check(const FactoredModulus& q, const FactoredModulus& r, unsigned s,
                                unsigned t, const KContext& kctx, unsigned threads = 1);

struct MinimalSReport {
  std::optional<unsigned> s;
  /// One report per s tried, ending with the holding one when found.
  std::vector<WaringPairReport> certificates;
};

MinimalSReport minimal_s(const FactoredModulus& q, const KContext& kctx, unsigned s_max = 64,
                         unsigned threads = 1);

/// Is x^k = a + c q (mod q^e) soluble.
bool hensel_solvable(u64 a, u64 c, const FactoredModulus& q, unsigned e, unsigned k);

/// a_1..a_s in A with sum n (mod q), or nullopt iff n is not in sA.
std::optional<std::vector<u64>> solve_representation(const ResidueSet& A, unsigned s, u64 n);

struct Selection {
  std::vector<u64> b;
  double weight = 0;   ///< sum of f(b_i)
  u64 s_prime = 0;     ///< elements drawn from the threshold set
  u64 b_star = 0;      ///< argmax of f, used for the remaining s - s' slots
  double lambda = 0;
};

/// Picks b_1..b_s in Z(W) with sum n (mod W), every f(b_i) > 0 and
/// sum f(b_i) > s/2. f maps elements of Z(W) to [0, 1); missing keys are 0.
Selection mean_condition_selector(const std::map<u64, double>& f, u64 n, unsigned s,
                                  const WContext& ctx, const KContext& kctx);

}  // namespace waring::local
