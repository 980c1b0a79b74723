#include "waring/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <mutex>

#include "waring/errors.hpp"

namespace waring::fft {
namespace {

// FFTW's planner is not thread-safe; execution of distinct plans is.
std::mutex planner_mutex;

struct Plan {
  fftw_plan plan = nullptr;
  ~Plan() {
    if (plan) {
      std::lock_guard lock(planner_mutex);
      fftw_destroy_plan(plan);
    }
  }
};

}  // namespace

std::size_t next_pow2(std::size_t n) { return std::bit_ceil(std::max<std::size_t>(n, 1)); }

std::vector<cplx> real_dft(std::span<const double> x, std::size_t M) {
  require(M >= 1 && x.size() <= M, "real_dft: input longer than transform size");
  std::vector<double> in(M, 0.0);
  std::copy(x.begin(), x.end(), in.begin());
  std::vector<cplx> out(M);
  Plan p;
  {
    std::lock_guard lock(planner_mutex);
    p.plan = fftw_plan_dft_r2c_1d(static_cast<int>(M), in.data(),
                                  reinterpret_cast<fftw_complex*>(out.data()), FFTW_ESTIMATE);
  }
  ensure(p.plan != nullptr, "FFTW failed to create r2c plan");
  fftw_execute(p.plan);
  for (std::size_t j = M / 2 + 1; j < M; ++j) out[j] = std::conj(out[M - j]);
  return out;
}

std::vector<double> inverse_real_dft(std::span<const cplx> X) {
  const std::size_t M = X.size();
  std::vector<cplx> in(X.begin(), X.begin() + (M / 2 + 1));
  std::vector<double> out(M);
  Plan p;
  {
    std::lock_guard lock(planner_mutex);
    p.plan = fftw_plan_dft_c2r_1d(static_cast<int>(M), reinterpret_cast<fftw_complex*>(in.data()),
                                  out.data(), FFTW_ESTIMATE);
  }
  ensure(p.plan != nullptr, "FFTW failed to create c2r plan");
  fftw_execute(p.plan);
  for (double& v : out) v /= static_cast<double>(M);
  return out;
}

std::vector<double> linear_convolve(std::span<const double> a, std::span<const double> b) {
  std::vector<double> parts[2] = {{a.begin(), a.end()}, {b.begin(), b.end()}};
  return linear_convolve_many(parts);
}

std::vector<double> linear_convolve_many(std::span<const std::vector<double>> parts) {
  require(!parts.empty(), "linear_convolve_many: need at least one sequence");
  std::size_t len = 1;
  for (const auto& p : parts) {
    require(!p.empty(), "linear_convolve_many: empty sequence");
    len += p.size() - 1;
  }
  if (len > (std::size_t{1} << 30)) throw RangeError("convolution length exceeds 2^30");
  const std::size_t M = next_pow2(len);
  std::vector<cplx> acc = real_dft(parts[0], M);
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const auto X = real_dft(parts[i], M);
    for (std::size_t j = 0; j < M; ++j) acc[j] *= X[j];
  }
  auto out = inverse_real_dft(acc);
  out.resize(len);
  return out;
}

}  // namespace waring::fft
