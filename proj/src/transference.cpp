#include "waring/transference.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <limits>
#include <numeric>

#include "waring/fft.hpp"
#include "waring/local.hpp"

namespace waring::transfer {
namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

// Exact autocorrelation counts c(d) = #{(a, b) in B^2 : a - b = d}, index d + L.
std::vector<double> difference_counts(const std::vector<u64>& B, u64 L) {
  const double B2 = static_cast<double>(B.size()) * static_cast<double>(B.size());
  if (B2 <= 5e7) {
    std::vector<double> c(2 * L + 1, 0.0);
    for (u64 a : B)
      for (u64 b : B) c[a + L - b] += 1.0;
    return c;
  }
  const u64 lo = B.front();
  std::vector<double> ind(L + 1, 0.0), rev(L + 1, 0.0);
  for (u64 a : B) {
    ind[a - lo] = 1.0;
    rev[L - (a - lo)] = 1.0;
  }
  auto c = fft::linear_convolve(ind, rev);  // index (a - lo) + (L - (b - lo)) = d + L
  for (double& v : c) v = std::nearbyint(v);  // integer counts
  return c;
}

}  // namespace

std::vector<u64> large_spectrum(const SpectrumGrid& grid, u64 N, double delta) {
  require(delta > 0 && delta < 1, "large_spectrum: delta must lie in (0, 1)");
  const double threshold = delta * static_cast<double>(N);
  std::vector<u64> out;
  for (u64 j = 0; j < grid.M; ++j) {
    if (std::abs(grid.values[j]) >= threshold && threshold > 0) out.push_back(j);
  }
  return out;
}

std::vector<u64> large_spectrum(const WeightedSequence& f, double delta, u64 M) {
  return large_spectrum(circle::dft_grid(f, M), f.N, delta);
}

BohrSet bohr_set(std::span<const u64> frequencies, u64 M, double delta, u64 N) {
  require(delta > 0 && delta < 1, "bohr_set: delta must lie in (0, 1)");
  const u64 bmax = static_cast<u64>(std::floor(delta * static_cast<double>(N)));
  require(bmax >= 1, "bohr_set: delta N must be at least 1");
  require(M >= 1, "bohr_set: grid size must be positive");
  BohrSet out;
  out.delta = delta;
  out.M = M;
  out.frequencies.assign(frequencies.begin(), frequencies.end());
  // ||b j / M|| < delta / 2pi  <=>  min(r, M - r) < delta M / 2pi, r = b j mod M.
  const long double radius = static_cast<long double>(delta) * M / kTwoPi;
  for (u64 b = 1; b <= bmax; ++b) {
    bool inside = true;
    for (u64 j : frequencies) {
      const u64 r = mul_mod(b, j % M, M);
      if (static_cast<long double>(std::min(r, M - r)) >= radius) {
        inside = false;
        break;
      }
    }
    if (inside) out.elements.push_back(b);
  }
  if (out.elements.empty()) {
    throw PreconditionError("Bohr set is empty (delta = " + std::to_string(delta) + ", " +
                            std::to_string(frequencies.size()) + " frequencies)");
  }
  return out;
}

DenseModel dense_model(const WeightedSequence& f, const BohrSet& bohr) {
  require(!bohr.elements.empty(), "dense_model: empty Bohr set");
  const auto& B = bohr.elements;
  const u64 L = B.back() - B.front();
  const auto counts = difference_counts(B, L);
  const double norm = static_cast<double>(B.size()) * static_cast<double>(B.size());

  DenseModel m;
  m.bohr = bohr;
  m.delta_used = bohr.delta;
  m.f_star.N = f.N;
  m.f_star.first = f.first - static_cast<i64>(L);
  m.f_star.meta = f.meta;
  m.f_star.meta.kind = circle::SequenceKind::dense_model;
  const std::size_t len = f.values.size() + 2 * L;

  // f*(n) = sum_d w(d) f(n + d); w is symmetric, so f* = f conv w.
  std::size_t nonzero = 0;
  for (double v : f.values) nonzero += v != 0;
  if (static_cast<double>(nonzero) * static_cast<double>(2 * L + 1) <= 5e7) {
    m.f_star.values.assign(len, 0.0);
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      const double v = f.values[i];
      if (v == 0) continue;
      // f(m) with m = f.first + i contributes to n = m - d, index i + L - d.
      for (u64 di = 0; di <= 2 * L; ++di) {
        if (counts[di] == 0) continue;
        m.f_star.values[i + 2 * L - di] += v * counts[di] / norm;
      }
    }
  } else {
    std::vector<double> w(counts.size());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = counts[i] / norm;
    m.f_star.values = fft::linear_convolve(f.values, w);
    for (double& v : m.f_star.values) v = std::max(v, 0.0);
  }
  m.f_unf = m.f_star;
  m.f_unf.meta.kind = circle::SequenceKind::custom;
  for (std::size_t i = 0; i < len; ++i) {
    const i64 n = m.f_star.first + static_cast<i64>(i);
    m.f_unf.values[i] = f.at(n) - m.f_star.values[i];
  }
  return m;
}

namespace {

template <class Frequencies>
DenseModel dense_model_with_retry(const WeightedSequence& f, double delta, u64 M,
                                  Frequencies&& frequencies_for) {
  std::vector<std::string> log;
  double d = delta;
  for (int attempt = 0;; ++attempt) {
    const auto freqs = frequencies_for(d);
    try {
      auto m = dense_model(f, bohr_set(freqs, M, d, f.N));
      m.delta_used = d;
      m.log = std::move(log);
      return m;
    } catch (const PreconditionError& e) {
      if (attempt == 3 || 2 * d >= 1) throw;
      log.push_back(std::string(e.what()) + "; retrying with delta = " + std::to_string(2 * d));
      d *= 2;
    }
  }
}

}  // namespace

DenseModel dense_model(const WeightedSequence& f, double delta, u64 M) {
  const auto grid = circle::dft_grid(f, M);
  return dense_model_with_retry(f, delta, M,
                                [&](double d) { return large_spectrum(grid, f.N, d); });
}

DenseModel dense_model(const WeightedSequence& f, double delta, u64 M,
                       std::span<const u64> frequencies) {
  std::vector<u64> freqs(frequencies.begin(), frequencies.end());
  return dense_model_with_retry(f, delta, M, [&](double) { return freqs; });
}

UniformityResult check_uniformity(const DenseModel& model, double delta, u64 M) {
  UniformityResult r;
  const auto grid = circle::dft_grid(model.f_unf, M);
  double best = 0;
  for (const auto& v : grid.values) best = std::max(best, std::abs(v));
  r.sup_norm_ratio = best / static_cast<double>(model.f_unf.N);
  r.holds = r.sup_norm_ratio <= delta * (1 + 1e-6);
  return r;
}

WeightedSequence convolution(std::span<const WeightedSequence> fs) {
  require(fs.size() >= 2, "convolution: need at least two sequences");
  std::vector<std::vector<double>> parts;
  WeightedSequence out;
  out.first = 0;
  for (const auto& f : fs) {
    require(!f.values.empty(), "convolution: empty sequence");
    parts.push_back(f.values);
    out.first += f.first;
    out.N += f.N;
  }
  out.values = fft::linear_convolve_many(parts);
  out.meta.kind = circle::SequenceKind::custom;
  return out;
}

std::vector<u64> exact_set_convolution(std::span<const std::vector<u64>> blocks) {
  require(!blocks.empty(), "exact_set_convolution: need at least one block");
  std::vector<u64> acc{1};  // the point mass at 0
  for (const auto& block : blocks) {
    u64 top = 0;
    for (u64 a : block) top = std::max(top, a);
    std::vector<u64> next(acc.size() + top, 0);
    for (std::size_t n = 0; n < acc.size(); ++n) {
      if (!acc[n]) continue;
      for (u64 a : block) {
        if (__builtin_add_overflow(next[n + a], acc[n], &next[n + a])) {
          throw RangeError("exact_set_convolution: count overflow");
        }
      }
    }
    acc = std::move(next);
  }
  return acc;
}

DenseSumsetResult dense_sumset_check(std::span<const std::vector<u64>> blocks, u64 N, double eps,
                                     bool enforce_preconditions) {
  require(blocks.size() >= 2, "dense_sumset_check: need s >= 2 blocks");
  require(eps > 0 && eps < 1, "dense_sumset_check: eps must lie in (0, 1)");
  const double s = static_cast<double>(blocks.size());
  const double Nd = static_cast<double>(N);
  DenseSumsetResult r;
  double total = 0;
  bool each = true;
  for (const auto& b : blocks) {
    for (u64 a : b) require(a >= 1 && a <= N, "dense_sumset_check: elements must lie in [1, N]");
    total += static_cast<double>(b.size());
    each = each && static_cast<double>(b.size()) > eps / 2 * Nd;
  }
  r.preconditions_met = each && total > s * (1 + eps) / 2 * Nd;
  if (enforce_preconditions) {
    require(r.preconditions_met,
            "dense_sumset_check: need sum |A_i| > s(1 + eps)N/2 and |A_i| > (eps/2)N");
  }
  r.window_lo = (1 - eps * eps / 16) * s * Nd / 2;
  r.window_hi = (1 + eps / 4) * s * Nd / 2;
  const auto conv = exact_set_convolution(blocks);
  r.min_count = ~u64{0};
  for (u64 n = static_cast<u64>(std::floor(r.window_lo)) + 1;
       static_cast<double>(n) < r.window_hi; ++n) {
    const u64 c = n < conv.size() ? conv[n] : 0;
    if (c < r.min_count) {
      r.min_count = c;
      r.argmin = n;
    }
  }
  if (r.min_count == ~u64{0}) r.min_count = 0;
  r.holds = r.min_count > 0;
  return r;
}

namespace {

// Support of f_1 * ... * f_s for nonnegative f_i, as a bitset over [0, top];
// bit x stands for n = x + sum of the f_i.first.
ResidueSet support_sumset(std::span<const WeightedSequence> fs, u64 top) {
  const FactoredModulus modulus(top + 1);
  std::optional<ResidueSet> acc;
  for (const auto& f : fs) {
    ResidueSet supp(modulus);
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      if (f.values[i] > 0) supp.insert(i);
    }
    acc = acc ? local::sumset(*acc, supp) : supp;
  }
  return *acc;
}

}  // namespace

TransferenceReport transference_demo(std::span<const WeightedSequence> fs,
                                     std::span<const WeightedSequence> majorants,
                                     TransferenceOptions options) {
  require(fs.size() >= 2, "transference_demo: need s >= 2 functions");
  require(majorants.size() == fs.size(), "transference_demo: one majorant per function");
  const u64 N = fs[0].N;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    require(fs[i].N == N && fs[i].first == 1 && fs[i].values.size() == N,
            "transference_demo: every function must live on the same [N]");
    require(majorants[i].N == N && majorants[i].values.size() == N,
            "transference_demo: majorants must live on [N]");
    for (std::size_t n = 0; n < N; ++n) {
      require(fs[i].values[n] >= 0, "transference_demo: functions must be nonnegative");
      require(fs[i].values[n] <= majorants[i].values[n] * (1 + 1e-12) + 1e-12,
              "transference_demo: function exceeds its majorant");
    }
  }
  TransferenceReport r;
  r.N = N;
  r.s = static_cast<unsigned>(fs.size());
  r.eps = options.eps;
  r.delta = options.delta;
  r.kappa = options.eps / 32;
  r.M = options.M ? options.M : circle::default_grid(N);
  r.q_exp = options.q_exp > 0 ? options.q_exp : r.s - 0.5;
  const double s = r.s;
  const double Nd = static_cast<double>(N);

  // Mean conditions.
  r.mean_each_ok = true;
  for (const auto& f : fs) {
    r.means.push_back(f.mean());
    r.mean_total += r.means.back();
    r.mean_each_ok = r.mean_each_ok && r.means.back() > r.eps / 2;
  }
  r.mean_total_ok = r.mean_total > s * (1 + r.eps) / 2;

  // Pseudorandomness of the majorants.
  for (const auto& nu : majorants) r.eta = std::max(r.eta, circle::majorant_eta(nu, r.M));
  r.eta_ok = r.eta <= r.kappa;

  // Dense models and restriction constants.
  std::vector<WeightedSequence> stars;
  for (const auto& f : fs) {
    auto model = dense_model(f, r.delta, r.M);
    for (auto& line : model.log) {
      if (std::find(r.notes.begin(), r.notes.end(), line) == r.notes.end()) r.notes.push_back(line);
    }
    r.bohr_sizes.push_back(model.bohr.elements.size());
    r.uniformity.push_back(check_uniformity(model, model.delta_used, r.M).sup_norm_ratio);
    const std::array<const WeightedSequence*, 3> parts = {&f, &model.f_star, &model.f_unf};
    for (const WeightedSequence* g : parts) {
      WeightedSequence h = *g;
      h.N = N;
      r.K_hat = std::max(r.K_hat, circle::restriction_constant(h, r.q_exp, r.M));
    }
    stars.push_back(std::move(model.f_star));
  }

  r.window_lo = (1 - r.kappa * r.kappa) * s * Nd / 2;
  r.window_hi = (1 + r.kappa) * s * Nd / 2;
  const auto conv = convolution(fs);
  const auto conv_star = convolution(stars);
  const double scale = std::pow(Nd, s - 1);
  r.holder_term = std::pow(2.0, s) * std::pow(r.delta, s - r.q_exp) *
                  std::pow(r.K_hat, r.q_exp) * scale;

  // Exact support of the sparse convolution.
  const i64 offset = conv.first;
  const u64 top = static_cast<u64>(conv.last() - offset);
  const ResidueSet support = support_sumset(fs, top);
  u64 g = 0;
  {
    const u64 first = support.first();
    support.for_each([&](u64 x) { g = std::gcd(g, x - first); });
  }
  r.support_gcd = g;

  r.support_covers_window = true;
  r.min_convolution = std::numeric_limits<double>::infinity();
  for (i64 n = static_cast<i64>(std::floor(r.window_lo)) + 1;
       static_cast<double>(n) < r.window_hi; ++n) {
    const double v = conv.at(n) / scale;
    const double diff = std::abs(conv.at(n) - conv_star.at(n));
    r.max_model_error = std::max(r.max_model_error, diff);
    const i64 idx = n - offset;
    const bool in_support = idx >= 0 && static_cast<u64>(idx) <= top &&
                            support.contains(static_cast<u64>(idx));
    if (!in_support) {
      r.support_covers_window = false;
      if (r.min_convolution > 0) {
        r.min_convolution = 0;
        r.argmin = n;
      }
    } else if (v < r.min_convolution) {
      r.min_convolution = v;
      r.argmin = n;
    }
  }
  r.K_hat_ok = r.max_model_error <= r.holder_term;
  r.positive = r.support_covers_window && r.min_convolution > 0;
  if (!r.support_covers_window && r.support_gcd > 1) {
    r.notes.push_back("convolution support lies in a progression of step " +
                      std::to_string(r.support_gcd));
  }
  r.holds = r.mean_total_ok && r.mean_each_ok && r.eta_ok && r.K_hat_ok && r.positive;
  return r;
}

}  // namespace waring::transfer
