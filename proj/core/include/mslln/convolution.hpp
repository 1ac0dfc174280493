#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace mslln {

enum class ConvolutionMethod { fft, direct };

/// "Valid" part of the linear convolution: out[i] = sum_t kernel[t] * signal[i + K - 1 - t]
/// for i in [0, N - K]. Quadratic reference implementation.
std::vector<double> convolve_valid_direct(std::span<const double> signal, std::span<const double> kernel);

/// Same result through a zero-padded real FFT (FFTW, estimate-mode plans so
/// the arithmetic is identical from run to run). The kernel transform is
/// computed once; apply() may be called concurrently.
class FftConvolver {
 public:
  FftConvolver(std::span<const double> kernel, std::size_t signal_length);
  ~FftConvolver();
  FftConvolver(FftConvolver&&) noexcept;
  FftConvolver& operator=(FftConvolver&&) noexcept;
  FftConvolver(const FftConvolver&) = delete;
  FftConvolver& operator=(const FftConvolver&) = delete;

  std::vector<double> apply(std::span<const double> signal) const;

  std::size_t signal_length() const;
  std::size_t kernel_length() const;
  std::size_t transform_length() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::vector<double> convolve_valid(std::span<const double> signal, std::span<const double> kernel,
                                   ConvolutionMethod method = ConvolutionMethod::fft);

}  // namespace mslln
