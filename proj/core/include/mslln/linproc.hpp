#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mslln/convolution.hpp"
#include "mslln/innovations.hpp"
#include "mslln/kernel.hpp"

namespace mslln {

enum class Sharing {
  shared,       ///< one innovation stream drives every component
  independent,  ///< component r draws from its own stream
};

std::string_view to_string(Sharing sharing);
Sharing parse_sharing(std::string_view name);

/// s-component linear-process ensemble. Component r is
/// x_k^(r) = sum_{|k-l| <= window} c_{k-l}^(r) xi_l^(r), k = 1..length.
struct ProcessConfig {
  int s = 1;
  std::vector<CoefficientSpec> coeffs;
  InnovationSpec innov;
  Sharing sharing = Sharing::shared;
  std::int64_t length = 0;
  std::int64_t window = 1 << 14;

  /// Hard violations throw (ConfigError, or LengthError for length 0).
  /// Returns soft warnings, e.g. a missing s v 2 moment.
  std::vector<std::string> validate() const;

  /// Same sigma for every component.
  static ProcessConfig uniform(int s, double sigma, InnovationSpec innov, std::int64_t length,
                               std::int64_t window = 1 << 14, Sharing sharing = Sharing::shared);
};

/// Reads `[process]` (s, sigma, scale, center, window, length, sharing) and
/// `[innovations]` (family, alpha, scale). `sigma` may be a single value or a
/// comma list of length s.
ProcessConfig process_config_from_keyvalue(std::string_view text);
std::string to_keyvalue(const ProcessConfig& config);

struct PathEnsemble {
  ProcessConfig config;
  std::uint64_t seed = 0;
  std::vector<std::vector<double>> x;  ///< s rows of `length` values
  std::vector<double> d;               ///< d_k = prod_r x[r][k]
  double truncation_bound = 0.0;       ///< max over r of truncation_error_bound
  std::vector<std::string> warnings;

  std::int64_t length() const { return static_cast<std::int64_t>(d.size()); }
};

/// Number of innovations each component consumes: length + 2 window,
/// covering indices 1 - window .. length + window.
std::size_t innovation_count(const ProcessConfig& config);

/// Seed of the innovation stream feeding component r.
std::uint64_t component_stream_seed(std::uint64_t seed, Sharing sharing, int component);

PathEnsemble simulate_paths(const ProcessConfig& config, std::uint64_t seed,
                            ConvolutionMethod method = ConvolutionMethod::fft);

/// Drives the filters with caller-supplied innovations: one vector per
/// component (or a single vector when shared), each innovation_count() long.
PathEnsemble simulate_paths_from_innovations(const ProcessConfig& config,
                                             std::span<const std::vector<double>> innovations,
                                             ConvolutionMethod method = ConvolutionMethod::fft);

/// d_k = prod_r x[r][k]; for s = 1 this is x[0].
std::vector<double> products(const PathEnsemble& ensemble);
std::vector<double> products(std::span<const std::vector<double>> paths);

/// L2 tail bound innov_variance * scale^2 * 2 M^(1-2 sigma) / (2 sigma - 1)
/// on the mass dropped by truncating at window M.
double truncation_error_bound(const CoefficientSpec& spec, std::int64_t window, double innov_variance);

/// E[d_k] for the untruncated-in-window process: zero unless the
/// innovations are shared and s = 2, where it is Var(xi) sum_l c_l^(1) c_l^(2).
/// Throws ConfigError for shared s > 2 (needs higher moments).
double expected_product(const ProcessConfig& config);

/// Columnar TSV: k, x_1..x_s, d.
std::string to_tsv(const PathEnsemble& ensemble);
/// Planar little-endian float64: x_1 (length values), ..., x_s, d.
std::vector<unsigned char> to_binary(const PathEnsemble& ensemble);
/// JSON sidecar for the binary block (config, seed, truncation bound, layout).
std::string sidecar_json(const PathEnsemble& ensemble, std::string_view binary_name);

}  // namespace mslln
