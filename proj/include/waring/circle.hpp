#pragma once

// W-tricked weights, exponential sums on a frequency grid, major arcs, and
// toy Vinogradov counts. Fourier convention: f^(alpha) = sum_n f(n) e(-n alpha).

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "waring/residue.hpp"

namespace waring::circle {

using cplx = std::complex<double>;

enum class SequenceKind { f_b, nu_b, indicator, dense_model, custom };

std::string to_string(SequenceKind kind);

struct SequenceMeta {
  SequenceKind kind = SequenceKind::custom;
  unsigned k = 0;
  unsigned w = 0;
  u64 W = 0;
  u64 b = 0;
};

/// Real function on the integers {first, ..., first + values.size() - 1},
/// zero elsewhere. N is the nominal range [N] the sequence models; for
/// sequences on [N], first = 1 and values.size() = N.
struct WeightedSequence {
  u64 N = 0;
  i64 first = 1;
  std::vector<double> values;
  SequenceMeta meta;

  double at(i64 n) const;
  double sum() const;
  /// sum() / N.
  double mean() const;
  i64 last() const { return first + static_cast<i64>(values.size()) - 1; }
};

WeightedSequence interval_indicator(u64 N);
/// 1_S on [N]; members outside [1, N] are ignored.
WeightedSequence set_indicator(u64 N, std::span<const u64> members);

/// The k-th powers t^k with 1 <= t and t^k <= limit, increasing.
std::vector<u64> kth_powers_up_to(unsigned k, u64 limit);

/// f_b(n) = (k / sigma_W(b)) t^{k-1} when Wn + b = t^k lies in A, else 0.
/// A must be sorted increasing.
WeightedSequence build_f_b(std::span<const u64> A, u64 N, const WContext& ctx, u64 b);

/// f_b with A = all k-th powers.
WeightedSequence build_nu_b(u64 N, const WContext& ctx, u64 b);

/// E_{n in [M_len]} f_b(n).
double mean_g(std::span<const u64> A, const WContext& ctx, u64 b, u64 M_len);

struct SpectrumGrid {
  u64 M = 0;
  std::vector<cplx> values;  ///< values[j] = f^(j / M)
};

/// Smallest power of two >= 4N.
u64 default_grid(u64 N);

/// f^ at all j/M by FFT. M must be a power of two with M >= 4N.
SpectrumGrid dft_grid(const WeightedSequence& f, u64 M);

/// Direct summation of f^(alpha).
cplx dft_direct(const WeightedSequence& f, double alpha);

struct MajorArc {
  u64 q = 0;
  u64 a = 0;
  double center = 0;
  double radius = 0;
};

struct ArcDecomposition {
  u64 N = 0;
  double rho = 0;
  u64 Q = 0;
  u64 T = 0;
  std::vector<MajorArc> arcs;

  /// The arc containing alpha (taken mod 1), or nullopt for the minor arcs.
  std::optional<MajorArc> classify(double alpha) const;
  /// sum of arc lengths.
  double measure() const;
};

/// Q = floor(N^rho), T = floor(N^{1-rho}); requires T > 2 Q^2.
ArcDecomposition decompose_arcs(u64 N, double rho);

struct PseudoReport {
  double eta = 0;
  u64 M = 0;
  u64 argmax_index = 0;
  double argmax_frequency = 0;
  /// "major(q,a)" or "minor".
  std::string arc_class;
};

/// max_j |nu_b^ - 1_[N]^|(j/M) / N. Requires gcd(b, W) = 1.
PseudoReport pseudorandomness(const WContext& ctx, u64 b, u64 N, u64 M, double rho = 0.2);
double pseudorandomness_eta(const WContext& ctx, u64 b, u64 N, u64 M);

/// max_j |f^ - g^|(j/M) / N for a function f and its majorant g.
double majorant_eta(const WeightedSequence& majorant, u64 M);

/// (M^{-1} sum_j |f^(j/M)|^q)^{1/q} / N^{1 - 1/q}.
double restriction_constant(const WeightedSequence& f, double q_exp, u64 M);
double restriction_constant(const SpectrumGrid& grid, u64 N, double q_exp);

/// sum over h mod Wq with h^k = b (mod W) of e(a h^k / (Wq)), by definition.
cplx V_q(i64 a, u64 b, u64 q, const WContext& ctx);
/// The same sum as a product of local sums over the prime powers of Wq.
cplx V_q_crt(i64 a, u64 b, u64 q, const WContext& ctx);

/// sum over t >= 1 with t^k <= N, t^k = b (mod W) of k t^{k-1} e(alpha t^k / W).
cplx G_b(double alpha, u64 N, const WContext& ctx, u64 b);
/// G_b at alpha = a/q with exact integer phases.
cplx G_b_rational(i64 a, u64 q, u64 N, const WContext& ctx, u64 b);

enum class VinogradovMethod {
  /// Histogram of power-sum vectors over ordered t-tuples, sum of squares.
  hash_join,
  /// Histogram over sorted t-tuples weighted by their number of orderings.
  multiset,
  /// Direct loop over all 2t-tuples; only for X^{2t} <= 2^28.
  exhaustive,
};

/// J_t^{(k)}(X) for t <= 4, k <= 3, X <= 30.
u64 vinogradov_count(unsigned t, unsigned k, u64 X,
                     VinogradovMethod method = VinogradovMethod::hash_join);

}  // namespace waring::circle
