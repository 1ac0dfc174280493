#include "mslln/tensor.hpp"

#include <cmath>

#include "mslln/error.hpp"
#include "mslln/kernel.hpp"
#include "mslln/linproc.hpp"

namespace mslln {

void TensorConfig::validate() const {
  if (m < 1 || d_out < 1) throw ConfigError("tensor dimensions must be >= 1");
  if (s < 1) throw ConfigError("tensor order s must be >= 1");
  if (sigmas.size() != 1 && static_cast<int>(sigmas.size()) != s) {
    throw ConfigError("tensor sigma list must have 1 or s entries");
  }
  if (length < 1) throw LengthError("tensor path length must be >= 1");
  if (window < 1) throw ConfigError("tensor window must be >= 1");
  for (const double e : exponents) {
    if (!(e > 0.0 && e <= 1.0)) throw ConfigError("tensor exponents must lie in (0, 1]");
  }
  double entries = 1.0;
  for (int r = 0; r < s; ++r) entries *= d_out;
  if (entries > static_cast<double>(max_entries)) {
    throw ConfigError("tensor of " + std::to_string(static_cast<long long>(entries)) +
                      " entries exceeds the cap of " + std::to_string(max_entries));
  }
  innov.validate();
}

double TensorConfig::sigma(int component) const {
  return sigmas.size() == 1 ? sigmas[0] : sigmas[static_cast<std::size_t>(component)];
}

std::uint64_t tensor_stream_seed(std::uint64_t seed, int m, int component, int channel) {
  return component_stream_seed(seed, Sharing::independent, component * m + channel);
}

TensorPaths simulate_tensor_paths(const TensorConfig& config, std::uint64_t seed, ConvolutionMethod method) {
  config.validate();
  const auto count = static_cast<std::size_t>(config.length + 2 * config.window);
  std::vector<std::vector<double>> innovations;
  for (int r = 0; r < config.s; ++r) {
    for (int j = 0; j < config.m; ++j) innovations.push_back(sample(config.innov, count, tensor_stream_seed(seed, config.m, r, j)));
  }
  return simulate_tensor_paths_from_innovations(config, innovations, method);
}

TensorPaths simulate_tensor_paths_from_innovations(const TensorConfig& config,
                                                   std::span<const std::vector<double>> innovations,
                                                   ConvolutionMethod method) {
  config.validate();
  if (innovations.size() != static_cast<std::size_t>(config.s * config.m)) {
    throw ConfigError("expected s * m innovation streams, got " + std::to_string(innovations.size()));
  }
  const auto n = static_cast<std::size_t>(config.length);
  const auto count = static_cast<std::size_t>(config.length + 2 * config.window);
  const auto d = static_cast<std::size_t>(config.d_out);
  const auto m = static_cast<std::size_t>(config.m);
  // Unit Frobenius norm pattern: every entry 1 / sqrt(d m).
  const double pattern = 1.0 / std::sqrt(static_cast<double>(d * m));

  // vectors[r][k * d + i] = i-th coordinate of X_k^(r).
  std::vector<std::vector<double>> vectors(static_cast<std::size_t>(config.s));
  for (int r = 0; r < config.s; ++r) {
    CoefficientSpec spec;
    spec.sigma = config.sigma(r);
    spec.scale = config.scale;
    spec.center_value = config.center_value;
    spec.window = config.window;
    const auto kernel = coefficient_kernel(spec);

    std::vector<double> channel_sum(n, 0.0);
    for (int j = 0; j < config.m; ++j) {
      const auto& xi = innovations[static_cast<std::size_t>(r * config.m + j)];
      if (xi.size() != count) throw LengthError("innovation stream must hold length + 2 window values");
      const auto y = convolve_valid(xi, kernel, method);
      for (std::size_t k = 0; k < n; ++k) channel_sum[k] += y[k];
    }
    auto& v = vectors[static_cast<std::size_t>(r)];
    v.resize(n * d);
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < d; ++i) v[k * d + i] = pattern * channel_sum[k];
    }
  }

  TensorPaths out;
  out.entries = 1;
  for (int r = 0; r < config.s; ++r) out.entries *= d;
  out.exponents = config.exponents;
  out.normalized_norms.assign(config.exponents.size(), std::vector<double>(n));
  if (config.keep_tensors) out.tensors.resize(n * out.entries);

  std::vector<double> tensor(out.entries);
  std::vector<double> partial(out.entries, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    // Outer product, first component varying slowest.
    tensor[0] = 1.0;
    std::size_t filled = 1;
    for (int r = 0; r < config.s; ++r) {
      const double* x = vectors[static_cast<std::size_t>(r)].data() + k * d;
      for (std::size_t a = filled; a-- > 0;) {
        const double base = tensor[a];
        for (std::size_t i = 0; i < d; ++i) tensor[a * d + i] = base * x[i];
      }
      filled *= d;
    }
    double norm2 = 0.0;
    for (std::size_t a = 0; a < out.entries; ++a) {
      partial[a] += tensor[a];
      norm2 += partial[a] * partial[a];
    }
    if (config.keep_tensors) std::copy(tensor.begin(), tensor.end(), out.tensors.begin() + static_cast<std::ptrdiff_t>(k * out.entries));
    const double norm = std::sqrt(norm2);
    for (std::size_t e = 0; e < config.exponents.size(); ++e) {
      out.normalized_norms[e][k] = norm / std::pow(static_cast<double>(k + 1), config.exponents[e]);
    }
  }
  return out;
}

}  // namespace mslln
