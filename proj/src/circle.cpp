#include "waring/circle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "waring/fft.hpp"

namespace waring::circle {
namespace {

constexpr long double kTwoPi = 2 * std::numbers::pi_v<long double>;

// e(x / m) for integers 0 <= x < m.
cplx unit_root(u64 x, u64 m) {
  const long double angle = kTwoPi * static_cast<long double>(x) / static_cast<long double>(m);
  return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

// e(theta) for real theta, reduced mod 1 first.
cplx unit_phase(long double theta) {
  theta -= std::floor(theta);
  const long double angle = kTwoPi * theta;
  return {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
}

u64 reduce_signed(i64 a, u64 m) {
  const i64 mm = static_cast<i64>(m);
  return static_cast<u64>(((a % mm) + mm) % mm);
}

void require_b_valid(const WContext& ctx, u64 b) {
  require(b < ctx.modulus(), "b must lie in [0, W)");
  require(ctx.sigma(b) > 0, "b = " + std::to_string(b) + " is not a k-th power residue mod W (" +
                                "sigma_W(b) = 0)");
}

}  // namespace

std::string to_string(SequenceKind kind) {
  switch (kind) {
    case SequenceKind::f_b: return "f_b";
    case SequenceKind::nu_b: return "nu_b";
    case SequenceKind::indicator: return "indicator";
    case SequenceKind::dense_model: return "dense_model";
    case SequenceKind::custom: return "custom";
  }
  return "custom";
}

double WeightedSequence::at(i64 n) const {
  if (n < first || n > last()) return 0.0;
  return values[static_cast<std::size_t>(n - first)];
}

double WeightedSequence::sum() const {
  long double s = 0;
  for (double v : values) s += v;
  return static_cast<double>(s);
}

double WeightedSequence::mean() const {
  require(N > 0, "mean of a sequence with N = 0");
  return sum() / static_cast<double>(N);
}

WeightedSequence interval_indicator(u64 N) {
  WeightedSequence f;
  f.N = N;
  f.values.assign(N, 1.0);
  f.meta.kind = SequenceKind::indicator;
  return f;
}

WeightedSequence set_indicator(u64 N, std::span<const u64> members) {
  WeightedSequence f;
  f.N = N;
  f.values.assign(N, 0.0);
  f.meta.kind = SequenceKind::indicator;
  for (u64 n : members) {
    if (n >= 1 && n <= N) f.values[n - 1] = 1.0;
  }
  return f;
}

std::vector<u64> kth_powers_up_to(unsigned k, u64 limit) {
  require(k >= 1, "k must be positive");
  std::vector<u64> out;
  for (u64 t = 1;; ++t) {
    u128 v = 1;
    for (unsigned i = 0; i < k && v <= limit; ++i) v *= t;
    if (v > limit) break;
    out.push_back(static_cast<u64>(v));
  }
  return out;
}

namespace {

WeightedSequence build_weights(const std::vector<u64>* A, u64 N, const WContext& ctx, u64 b) {
  require_b_valid(ctx, b);
  const u64 W = ctx.modulus();
  const unsigned k = ctx.k();
  const double scale = static_cast<double>(k) / static_cast<double>(ctx.sigma(b));
  WeightedSequence f;
  f.N = N;
  f.values.assign(N, 0.0);
  f.meta = {A ? SequenceKind::f_b : SequenceKind::nu_b, k, ctx.w(), W, b};
  const u64 limit = checked_mul(W, N) + b;
  for (u64 t = 1;; ++t) {
    u128 v = 1;
    for (unsigned i = 0; i < k && v <= limit; ++i) v *= t;
    if (v > limit) break;
    const u64 tk = static_cast<u64>(v);
    if (tk % W != b || tk < W + b) continue;
    if (A && !std::binary_search(A->begin(), A->end(), tk)) continue;
    const u64 n = (tk - b) / W;
    f.values[n - 1] = scale * std::pow(static_cast<double>(t), static_cast<double>(k - 1));
  }
  return f;
}

}  // namespace

WeightedSequence build_f_b(std::span<const u64> A, u64 N, const WContext& ctx, u64 b) {
  std::vector<u64> sorted(A.begin(), A.end());
  if (!std::is_sorted(sorted.begin(), sorted.end())) std::sort(sorted.begin(), sorted.end());
  return build_weights(&sorted, N, ctx, b);
}

WeightedSequence build_nu_b(u64 N, const WContext& ctx, u64 b) {
  return build_weights(nullptr, N, ctx, b);
}

double mean_g(std::span<const u64> A, const WContext& ctx, u64 b, u64 M_len) {
  require(M_len >= 1, "mean_g: M must be positive");
  return build_f_b(A, M_len, ctx, b).mean();
}

u64 default_grid(u64 N) { return std::bit_ceil(std::max<u64>(4 * N, 1)); }

SpectrumGrid dft_grid(const WeightedSequence& f, u64 M) {
  require(std::has_single_bit(M), "dft_grid: M must be a power of two");
  require(M >= 4 * f.N && M >= f.values.size(),
          "dft_grid: grid size M = " + std::to_string(M) + " is smaller than 4N");
  SpectrumGrid g;
  g.M = M;
  g.values = fft::real_dft(f.values, M);
  const u64 shift = reduce_signed(f.first, M);
  if (shift != 0) {
    for (u64 j = 0; j < M; ++j) g.values[j] *= std::conj(unit_root(mul_mod(shift, j, M), M));
  }
  return g;
}

cplx dft_direct(const WeightedSequence& f, double alpha) {
  long double re = 0, im = 0;
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (f.values[i] == 0) continue;
    const i64 n = f.first + static_cast<i64>(i);
    long double theta = -static_cast<long double>(alpha) * n;
    theta -= std::floor(theta);
    re += f.values[i] * std::cos(kTwoPi * theta);
    im += f.values[i] * std::sin(kTwoPi * theta);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

std::optional<MajorArc> ArcDecomposition::classify(double alpha) const {
  long double x = alpha;
  x -= std::floor(x);
  for (u64 q = 1; q <= Q; ++q) {
    const long double aq = std::nearbyint(x * q);
    const u64 a = static_cast<u64>(aq) % q;
    if (std::gcd(a, q) != 1) continue;
    long double dist = std::fabs(x - aq / q);
    dist = std::min(dist, 1 - dist);
    if (dist <= 1.0L / T) {
      return MajorArc{q, a, static_cast<double>(a) / static_cast<double>(q),
                      1.0 / static_cast<double>(T)};
    }
  }
  return std::nullopt;
}

double ArcDecomposition::measure() const {
  return static_cast<double>(arcs.size()) * 2.0 / static_cast<double>(T);
}

ArcDecomposition decompose_arcs(u64 N, double rho) {
  require(rho > 0 && rho <= 1.0 / 3 + 1e-12, "decompose_arcs: rho must lie in (0, 1/3]");
  require(N >= 2, "decompose_arcs: N must be at least 2");
  ArcDecomposition d;
  d.N = N;
  d.rho = rho;
  const double Nd = static_cast<double>(N);
  d.Q = static_cast<u64>(std::floor(std::pow(Nd, rho) + 1e-9));
  d.T = static_cast<u64>(std::floor(std::pow(Nd, 1 - rho) + 1e-9));
  if (d.T <= 2 * d.Q * d.Q) {
    throw PreconditionError("major arcs overlap: T = " + std::to_string(d.T) +
                            " <= 2Q^2 = " + std::to_string(2 * d.Q * d.Q) +
                            "; lower rho or raise N");
  }
  for (u64 q = 1; q <= d.Q; ++q) {
    for (u64 a = 0; a < q; ++a) {
      if (std::gcd(a, q) == 1) {
        d.arcs.push_back({q, a, static_cast<double>(a) / static_cast<double>(q),
                          1.0 / static_cast<double>(d.T)});
      }
    }
  }
  return d;
}

double majorant_eta(const WeightedSequence& majorant, u64 M) {
  WeightedSequence diff = majorant;
  require(diff.first == 1 && diff.values.size() == diff.N,
          "majorant_eta: majorant must live on [N]");
  for (double& v : diff.values) v -= 1.0;
  const auto grid = dft_grid(diff, M);
  double best = 0;
  for (const auto& v : grid.values) best = std::max(best, std::abs(v));
  return best / static_cast<double>(majorant.N);
}

PseudoReport pseudorandomness(const WContext& ctx, u64 b, u64 N, u64 M, double rho) {
  require(std::gcd(b, ctx.modulus()) == 1, "pseudorandomness: gcd(b, W) must be 1");
  WeightedSequence diff = build_nu_b(N, ctx, b);
  for (double& v : diff.values) v -= 1.0;
  const auto grid = dft_grid(diff, M);
  PseudoReport r;
  r.M = M;
  for (u64 j = 0; j < M; ++j) {
    const double a = std::abs(grid.values[j]);
    if (a > r.eta) {
      r.eta = a;
      r.argmax_index = j;
    }
  }
  r.eta /= static_cast<double>(N);
  r.argmax_frequency = static_cast<double>(r.argmax_index) / static_cast<double>(M);
  try {
    const auto arcs = decompose_arcs(N, rho);
    if (auto arc = arcs.classify(r.argmax_frequency)) {
      r.arc_class = "major(" + std::to_string(arc->q) + "," + std::to_string(arc->a) + ")";
    } else {
      r.arc_class = "minor";
    }
  } catch (const PreconditionError&) {
    r.arc_class = "unclassified";
  }
  return r;
}

double pseudorandomness_eta(const WContext& ctx, u64 b, u64 N, u64 M) {
  return pseudorandomness(ctx, b, N, M).eta;
}

double restriction_constant(const SpectrumGrid& grid, u64 N, double q_exp) {
  require(q_exp > 1, "restriction_constant: q must exceed 1");
  require(N >= 1, "restriction_constant: N must be positive");
  long double acc = 0;
  for (const auto& v : grid.values) acc += std::pow(static_cast<long double>(std::abs(v)), q_exp);
  const long double norm = std::pow(acc / grid.M, 1.0L / q_exp);
  return static_cast<double>(norm / std::pow(static_cast<long double>(N), 1 - 1 / q_exp));
}

double restriction_constant(const WeightedSequence& f, double q_exp, u64 M) {
  return restriction_constant(dft_grid(f, M), f.N, q_exp);
}

cplx V_q(i64 a, u64 b, u64 q, const WContext& ctx) {
  require(q >= 1, "V_q: q must be positive");
  const u64 W = ctx.modulus();
  require(b < W, "V_q: b must lie in [0, W)");
  const u64 Wq = checked_mul(W, q, 100'000'000);
  const u64 am = reduce_signed(a, Wq);
  const unsigned k = ctx.k();
  long double re = 0, im = 0;
  for (u64 h = 0; h < Wq; ++h) {
    const u64 hk = pow_mod(h, k, Wq);
    if (hk % W != b) continue;
    const cplx z = unit_root(mul_mod(am, hk, Wq), Wq);
    re += z.real();
    im += z.imag();
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

cplx V_q_crt(i64 a, u64 b, u64 q, const WContext& ctx) {
  require(q >= 1, "V_q: q must be positive");
  const u64 W = ctx.modulus();
  require(b < W, "V_q: b must lie in [0, W)");
  const u64 Wq = checked_mul(W, q, 100'000'000);
  const u64 am = reduce_signed(a, Wq);
  const unsigned k = ctx.k();
  cplx total = 1.0;
  const FactoredModulus fm(Wq);
  for (const auto& f : fm.factors()) {
    const u64 pe = f.value();
    const u64 c = *inverse_mod((Wq / pe) % pe, pe);
    // The W-condition at p is h^k = b (mod p^k) when p | W.
    const u64 pw = (W % f.prime == 0) ? checked_pow(f.prime, k) : 1;
    ensure(pe % pw == 0, "V_q: local modulus does not resolve the W-condition");
    const u64 coeff = mul_mod(am % pe, c, pe);
    long double re = 0, im = 0;
    for (u64 h = 0; h < pe; ++h) {
      const u64 hk = pow_mod(h, k, pe);
      if (hk % pw != b % pw) continue;
      const cplx z = unit_root(mul_mod(coeff, hk, pe), pe);
      re += z.real();
      im += z.imag();
    }
    total *= cplx(static_cast<double>(re), static_cast<double>(im));
  }
  return total;
}

namespace {

template <class Phase>
cplx sum_G(u64 N, const WContext& ctx, u64 b, Phase&& phase) {
  require(b < ctx.modulus(), "G_b: b must lie in [0, W)");
  const u64 W = ctx.modulus();
  const unsigned k = ctx.k();
  long double re = 0, im = 0;
  for (u64 t = 1;; ++t) {
    u128 v = 1;
    for (unsigned i = 0; i < k && v <= N; ++i) v *= t;
    if (v > N) break;
    const u64 tk = static_cast<u64>(v);
    if (tk % W != b) continue;
    const long double weight = k * std::pow(static_cast<long double>(t), k - 1.0L);
    const cplx z = phase(tk);
    re += weight * z.real();
    im += weight * z.imag();
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

}  // namespace

cplx G_b(double alpha, u64 N, const WContext& ctx, u64 b) {
  const u64 W = ctx.modulus();
  return sum_G(N, ctx, b, [&](u64 tk) {
    // alpha t^k / W = alpha m + alpha r / W with t^k = m W + r.
    const long double al = alpha;
    long double x = al * static_cast<long double>(tk / W);
    x -= std::floor(x);
    return unit_phase(x + al * static_cast<long double>(tk % W) / W);
  });
}

cplx G_b_rational(i64 a, u64 q, u64 N, const WContext& ctx, u64 b) {
  require(q >= 1, "G_b: q must be positive");
  const u64 Wq = checked_mul(ctx.modulus(), q);
  const u64 am = reduce_signed(a, Wq);
  return sum_G(N, ctx, b, [&](u64 tk) { return unit_root(mul_mod(am, tk % Wq, Wq), Wq); });
}

namespace {

struct PowerSumKey {
  unsigned t, k;
  u64 X;
  std::vector<u64> radix;

  PowerSumKey(unsigned t_, unsigned k_, u64 X_) : t(t_), k(k_), X(X_) {
    u128 total = 1;
    for (unsigned j = 1; j <= k; ++j) {
      radix.push_back(t * checked_pow(X, j) + 1);
      total *= radix.back();
    }
    ensure(total < (u128{1} << 63), "power-sum key does not fit in 64 bits");
  }

  u64 operator()(const std::vector<u64>& xs) const {
    u64 key = 0;
    for (unsigned j = k; j >= 1; --j) {
      u64 s = 0;
      for (u64 x : xs) s += checked_pow(x, j);
      key = key * radix[j - 1] + s;
    }
    return key;
  }
};

// Visits every vector in [1, X]^len in lexicographic order.
template <class F>
void for_each_tuple(unsigned len, u64 X, F&& f) {
  std::vector<u64> xs(len, 1);
  for (;;) {
    f(xs);
    unsigned i = len;
    while (i > 0 && xs[i - 1] == X) xs[--i] = 1;
    if (i == 0) return;
    ++xs[i - 1];
  }
}

// Visits every nondecreasing vector in [1, X]^len.
template <class F>
void for_each_sorted_tuple(unsigned len, u64 X, F&& f) {
  std::vector<u64> xs(len, 1);
  for (;;) {
    f(xs);
    unsigned i = len;
    while (i > 0 && xs[i - 1] == X) --i;
    if (i == 0) return;
    const u64 v = ++xs[i - 1];
    for (unsigned j = i; j < len; ++j) xs[j] = v;
  }
}

u64 orderings(const std::vector<u64>& sorted) {
  static constexpr u64 fact[] = {1, 1, 2, 6, 24};
  u64 n = fact[sorted.size()];
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
    n /= fact[j - i];
    i = j;
  }
  return n;
}

}  // namespace

u64 vinogradov_count(unsigned t, unsigned k, u64 X, VinogradovMethod method) {
  if (t < 1 || t > 4 || k < 1 || k > 3 || X < 1 || X > 30) {
    throw RangeError("vinogradov_count supports 1 <= t <= 4, 1 <= k <= 3, 1 <= X <= 30");
  }
  const PowerSumKey key(t, k, X);
  switch (method) {
    case VinogradovMethod::hash_join: {
      std::unordered_map<u64, u64> hist;
      for_each_tuple(t, X, [&](const std::vector<u64>& xs) { ++hist[key(xs)]; });
      u64 total = 0;
      for (const auto& [_, c] : hist) total += c * c;
      return total;
    }
    case VinogradovMethod::multiset: {
      std::vector<std::pair<u64, u64>> weighted;
      for_each_sorted_tuple(t, X, [&](const std::vector<u64>& xs) {
        weighted.emplace_back(key(xs), orderings(xs));
      });
      std::sort(weighted.begin(), weighted.end());
      u64 total = 0;
      for (std::size_t i = 0; i < weighted.size();) {
        u64 c = 0;
        std::size_t j = i;
        for (; j < weighted.size() && weighted[j].first == weighted[i].first; ++j) {
          c += weighted[j].second;
        }
        total += c * c;
        i = j;
      }
      return total;
    }
    case VinogradovMethod::exhaustive: {
      if (checked_pow(X, 2 * t, ~u64{0} >> 1) > (u64{1} << 28)) {
        throw RangeError("exhaustive Vinogradov count limited to X^{2t} <= 2^28");
      }
      u64 total = 0;
      std::vector<u64> lhs(t), rhs(t);
      for_each_tuple(2 * t, X, [&](const std::vector<u64>& xs) {
        for (unsigned j = 1; j <= k; ++j) {
          u64 a = 0, b = 0;
          for (unsigned i = 0; i < t; ++i) {
            a += checked_pow(xs[i], j);
            b += checked_pow(xs[t + i], j);
          }
          if (a != b) return;
        }
        ++total;
      });
      return total;
    }
  }
  return 0;
}

}  // namespace waring::circle
