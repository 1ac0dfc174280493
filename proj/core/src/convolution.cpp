#include "mslln/convolution.hpp"

#include <fftw3.h>

#include <algorithm>
#include <complex>
#include <mutex>

#include "mslln/error.hpp"

namespace mslln {

namespace {

// The FFTW planner is not thread-safe; execution with new-array functions is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const noexcept { fftw_free(p); }
};
using RealBuffer = std::unique_ptr<double[], FftwFree>;
using ComplexBuffer = std::unique_ptr<fftw_complex[], FftwFree>;

RealBuffer alloc_real(std::size_t n) {
  auto* p = fftw_alloc_real(n);
  if (!p) throw std::bad_alloc();
  return RealBuffer(p);
}

ComplexBuffer alloc_complex(std::size_t n) {
  auto* p = fftw_alloc_complex(n);
  if (!p) throw std::bad_alloc();
  return ComplexBuffer(p);
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

void check_lengths(std::size_t signal, std::size_t kernel) {
  if (kernel == 0) throw ConfigError("convolution kernel is empty");
  if (signal < kernel) throw LengthError("convolution signal shorter than kernel");
}

}  // namespace

std::vector<double> convolve_valid_direct(std::span<const double> signal, std::span<const double> kernel) {
  check_lengths(signal.size(), kernel.size());
  const auto k = kernel.size();
  std::vector<double> out(signal.size() - k + 1);
  for (std::size_t i = 0; i < out.size(); ++i) {
    double acc = 0.0;
    for (std::size_t t = 0; t < k; ++t) acc += kernel[t] * signal[i + k - 1 - t];
    out[i] = acc;
  }
  return out;
}

struct FftConvolver::Impl {
  std::size_t signal_length = 0;
  std::size_t kernel_length = 0;
  std::size_t size = 0;
  ComplexBuffer kernel_hat;
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  ~Impl() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (backward) fftw_destroy_plan(backward);
  }
};

FftConvolver::FftConvolver(std::span<const double> kernel, std::size_t signal_length)
    : impl_(std::make_unique<Impl>()) {
  check_lengths(signal_length, kernel.size());
  impl_->signal_length = signal_length;
  impl_->kernel_length = kernel.size();
  // Circular wrap only pollutes the first K-1 outputs, which "valid" drops.
  impl_->size = next_pow2(signal_length);
  const auto n = impl_->size;
  const auto bins = n / 2 + 1;

  auto real = alloc_real(n);
  impl_->kernel_hat = alloc_complex(bins);
  {
    std::lock_guard lock(planner_mutex());
    impl_->forward = fftw_plan_dft_r2c_1d(static_cast<int>(n), real.get(), impl_->kernel_hat.get(), FFTW_ESTIMATE);
    impl_->backward = fftw_plan_dft_c2r_1d(static_cast<int>(n), impl_->kernel_hat.get(), real.get(), FFTW_ESTIMATE);
  }
  if (!impl_->forward || !impl_->backward) throw Error("FFTW planning failed");

  std::fill(real.get(), real.get() + n, 0.0);
  std::copy(kernel.begin(), kernel.end(), real.get());
  fftw_execute_dft_r2c(impl_->forward, real.get(), impl_->kernel_hat.get());
}

FftConvolver::~FftConvolver() = default;
FftConvolver::FftConvolver(FftConvolver&&) noexcept = default;
FftConvolver& FftConvolver::operator=(FftConvolver&&) noexcept = default;

std::size_t FftConvolver::signal_length() const { return impl_->signal_length; }
std::size_t FftConvolver::kernel_length() const { return impl_->kernel_length; }
std::size_t FftConvolver::transform_length() const { return impl_->size; }

std::vector<double> FftConvolver::apply(std::span<const double> signal) const {
  if (signal.size() != impl_->signal_length) throw LengthError("signal length differs from planned length");
  const auto n = impl_->size;
  const auto bins = n / 2 + 1;
  auto real = alloc_real(n);
  auto hat = alloc_complex(bins);
  std::fill(real.get(), real.get() + n, 0.0);
  std::copy(signal.begin(), signal.end(), real.get());
  fftw_execute_dft_r2c(impl_->forward, real.get(), hat.get());

  const auto* kh = impl_->kernel_hat.get();
  for (std::size_t i = 0; i < bins; ++i) {
    const double re = hat[i][0] * kh[i][0] - hat[i][1] * kh[i][1];
    const double im = hat[i][0] * kh[i][1] + hat[i][1] * kh[i][0];
    hat[i][0] = re;
    hat[i][1] = im;
  }
  fftw_execute_dft_c2r(impl_->backward, hat.get(), real.get());

  const auto k = impl_->kernel_length;
  const double norm = 1.0 / static_cast<double>(n);
  std::vector<double> out(impl_->signal_length - k + 1);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = real[i + k - 1] * norm;
  return out;
}

std::vector<double> convolve_valid(std::span<const double> signal, std::span<const double> kernel,
                                   ConvolutionMethod method) {
  if (method == ConvolutionMethod::direct) return convolve_valid_direct(signal, kernel);
  return FftConvolver(kernel, signal.size()).apply(signal);
}

}  // namespace mslln
