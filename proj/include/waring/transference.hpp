#pragma once

// Bohr sets, dense models f* = f averaged over B - B, and the transference
// demonstrator comparing sparse convolutions with their dense models.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "waring/circle.hpp"

namespace waring::transfer {

using circle::SpectrumGrid;
using circle::WeightedSequence;

/// Grid indices j with |f^(j/M)| >= delta N.
std::vector<u64> large_spectrum(const WeightedSequence& f, double delta, u64 M);
std::vector<u64> large_spectrum(const SpectrumGrid& grid, u64 N, double delta);

struct BohrSet {
  double delta = 0;
  u64 M = 0;
  std::vector<u64> frequencies;  ///< grid indices j, frequency j/M
  std::vector<u64> elements;     ///< sorted, within [1, floor(delta N)]
};

/// {1 <= b <= delta N : ||b j / M|| < delta / 2pi for every stored j}.
/// Throws PreconditionError when the result is empty.
BohrSet bohr_set(std::span<const u64> frequencies, u64 M, double delta, u64 N);

struct DenseModel {
  WeightedSequence f_star;
  /// f - f*, signed, on the same support as f_star.
  WeightedSequence f_unf;
  BohrSet bohr;
  /// delta after any doubling retries; equal to the requested delta when
  /// no retry was needed.
  double delta_used = 0;
  std::vector<std::string> log;
};

/// f*(n) = E_{a, b in B} f(n + a - b), with f zero outside its support.
DenseModel dense_model(const WeightedSequence& f, const BohrSet& bohr);

/// Builds the Bohr set from the large spectrum of f. When that Bohr set is
/// empty, delta is doubled (at most three times) before failing.
DenseModel dense_model(const WeightedSequence& f, double delta, u64 M);

/// Same, but with an explicit frequency list instead of the large spectrum.
DenseModel dense_model(const WeightedSequence& f, double delta, u64 M,
                       std::span<const u64> frequencies);

struct UniformityResult {
  double sup_norm_ratio = 0;
  bool holds = false;
};

/// max_j |f_unf^(j/M)| / N against delta.
UniformityResult check_uniformity(const DenseModel& model, double delta, u64 M);

/// Linear convolution f_1 * ... * f_s via one zero-padded transform.
WeightedSequence convolution(std::span<const WeightedSequence> fs);

/// Exact integer convolution counts of indicator sets; index i is the
/// value at n = i (so entries below the smallest sum are zero).
std::vector<u64> exact_set_convolution(std::span<const std::vector<u64>> blocks);

struct DenseSumsetResult {
  bool preconditions_met = false;
  bool holds = false;
  double window_lo = 0;  ///< open interval
  double window_hi = 0;
  u64 min_count = 0;
  u64 argmin = 0;
};

/// Checks 1_{A_1} * ... * 1_{A_s}(n) > 0 on ((1 - eps^2/16) sN/2, (1 + eps/4) sN/2).
/// With enforce_preconditions = false the density conditions are reported
/// but not gated, which is how negative controls are run.
DenseSumsetResult dense_sumset_check(std::span<const std::vector<u64>> blocks, u64 N, double eps,
                                     bool enforce_preconditions = true);

struct TransferenceReport {
  u64 N = 0;
  unsigned s = 0;
  double eps = 0;
  double delta = 0;
  double kappa = 0;
  double q_exp = 0;
  u64 M = 0;

  std::vector<double> means;
  double mean_total = 0;
  bool mean_total_ok = false;
  bool mean_each_ok = false;

  double eta = 0;  ///< max over i of the measured majorant eta
  bool eta_ok = false;

  double K_hat = 0;  ///< max restriction constant over f_i, f*_i, f_unf_i
  double holder_term = 0;  ///< 2^s delta^{s-q} K^q N^{s-1}
  double max_model_error = 0;  ///< max_n |f conv - f* conv| on the window
  bool K_hat_ok = false;

  std::vector<u64> bohr_sizes;
  std::vector<double> uniformity;

  double window_lo = 0;
  double window_hi = 0;
  double min_convolution = 0;  ///< normalized by N^{s-1}
  i64 argmin = 0;
  bool support_covers_window = false;
  u64 support_gcd = 0;  ///< gcd of the differences within the convolution support
  bool positive = false;

  bool holds = false;
  std::vector<std::string> notes;
};

struct TransferenceOptions {
  double eps = 0.5;
  double delta = 0.05;
  u64 M = 0;              ///< 0 selects default_grid(N)
  double q_exp = 0;       ///< 0 selects s - 1/2
};

/// fs[i] is majorized by majorants[i] (pass 1_[N] as its own majorant for
/// dense inputs). All sequences live on the same [N].
TransferenceReport transference_demo(std::span<const WeightedSequence> fs,
                                     std::span<const WeightedSequence> majorants,
                                     TransferenceOptions options);

}  // namespace waring::transfer
