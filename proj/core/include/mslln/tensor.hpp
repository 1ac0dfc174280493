#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mslln/convolution.hpp"
#include "mslln/innovations.hpp"

namespace mslln {

/// Matrix-valued linear processes X_k^(r) = sum_l C_{k-l}^(r) Xi_l^(r) with
/// C_l^(r) = scale |l|^-sigma_r P (C_0 = center P), P the d_out x m all-ones
/// matrix scaled to unit Frobenius norm, and Xi^(r) i.i.d. vectors in R^m.
/// Components use independent innovation streams.
struct TensorConfig {
  int m = 1;
  int d_out = 1;
  int s = 2;
  std::vector<double> sigmas;  ///< one per component, or a single shared value
  double scale = 1.0;
  double center_value = 1.0;
  InnovationSpec innov;
  std::int64_t length = 0;
  std::int64_t window = 1 << 14;
  std::vector<double> exponents;  ///< 1/p values for the normalised norms
  bool keep_tensors = true;
  std::size_t max_entries = 1'000'000;  ///< cap on d_out^s

  void validate() const;
  double sigma(int component) const;
};

struct TensorPaths {
  std::size_t entries = 0;           ///< d_out^s
  std::vector<double> tensors;       ///< length x entries, row k holds the flattened tensor at k+1
  std::vector<double> exponents;
  /// norms[i][k-1] = k^-e_i ||sum_{j<=k} (T_j - E T_j)||_F; E T = 0 for
  /// independent zero-mean components.
  std::vector<std::vector<double>> normalized_norms;
};

/// Stream seed of channel j of component r; with m = 1 this equals the
/// independent-sharing stream of the scalar simulator.
std::uint64_t tensor_stream_seed(std::uint64_t seed, int m, int component, int channel);

TensorPaths simulate_tensor_paths(const TensorConfig& config, std::uint64_t seed,
                                  ConvolutionMethod method = ConvolutionMethod::fft);

/// Same pipeline driven by caller-supplied innovations: stream r * m + j
/// feeds channel j of component r, each length + 2 window long.
TensorPaths simulate_tensor_paths_from_innovations(const TensorConfig& config,
                                                   std::span<const std::vector<double>> innovations,
                                                   ConvolutionMethod method = ConvolutionMethod::fft);

}  // namespace mslln
