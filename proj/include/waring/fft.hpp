#pragma once

// Thin FFTW wrappers. Sign convention: forward transforms use e(-n j / M).

#include <complex>
#include <span>
#include <vector>

namespace waring::fft {

using cplx = std::complex<double>;

/// Full length-M spectrum X_j = sum_n x_n e(-n j / M) of real x zero-padded
/// to length M (x.size() <= M).
std::vector<cplx> real_dft(std::span<const double> x, std::size_t M);

/// Inverse of a full spectrum known to come from real data:
/// x_n = M^{-1} sum_j X_j e(n j / M).
std::vector<double> inverse_real_dft(std::span<const cplx> X);

/// Linear convolution of real sequences, length a.size() + b.size() - 1.
std::vector<double> linear_convolve(std::span<const double> a, std::span<const double> b);

/// Linear convolution of several real sequences with one shared transform
/// size.
std::vector<double> linear_convolve_many(std::span<const std::vector<double>> parts);

/// Smallest power of two >= n.
std::size_t next_pow2(std::size_t n);

}  // namespace waring::fft
