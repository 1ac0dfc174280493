#include "mslln/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <span>
#include <sstream>

#include "mslln/error.hpp"
#include "mslln/format.hpp"
#include "mslln/parallel.hpp"

namespace mslln {

void CoefficientSpec::validate() const {
  if (!(sigma > 0.5 && sigma <= 1.0)) {
    throw ConfigError("coefficient sigma must lie in (0.5, 1], got " + format_real(sigma));
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw ConfigError("coefficient scale must be positive and finite");
  }
  if (!std::isfinite(center_value)) throw ConfigError("coefficient center value must be finite");
  if (window < 1) throw ConfigError("coefficient window must be >= 1");
}

double coefficient(const CoefficientSpec& spec, std::int64_t l) {
  if (l > spec.window || l < -spec.window) {
    throw DomainError("coefficient index " + std::to_string(l) + " outside window " +
                      std::to_string(spec.window));
  }
  if (l == 0) return spec.center_value;
  return spec.scale * std::pow(static_cast<double>(l < 0 ? -l : l), -spec.sigma);
}

std::vector<double> coefficient_kernel(const CoefficientSpec& spec) {
  spec.validate();
  const auto m = spec.window;
  std::vector<double> kernel(static_cast<std::size_t>(2 * m + 1));
  kernel[static_cast<std::size_t>(m)] = spec.center_value;
  for (std::int64_t l = 1; l <= m; ++l) {
    const double c = spec.scale * std::pow(static_cast<double>(l), -spec.sigma);
    kernel[static_cast<std::size_t>(m + l)] = c;
    kernel[static_cast<std::size_t>(m - l)] = c;
  }
  return kernel;
}

double coefficient_energy(const CoefficientSpec& spec) {
  spec.validate();
  double tail = 0.0;
  // Smallest terms first.
  for (std::int64_t l = spec.window; l >= 1; --l) {
    const double c = spec.scale * std::pow(static_cast<double>(l), -spec.sigma);
    tail += c * c;
  }
  return spec.center_value * spec.center_value + 2.0 * tail;
}

double l_poly(LPolyParams params, double x) {
  if (params.n < 1) throw ConfigError("l_poly requires n >= 1");
  if (!(x >= 0.0)) throw DomainError("l_poly requires x >= 0");
  const double n = params.n;
  const double threshold = (n + 1.0) / (2.0 * n);
  if (params.beta < threshold) return std::pow(x, n * (1.0 - 2.0 * params.beta) + 1.0);
  if (params.beta == threshold) return std::log(x + 1.0);
  return 1.0;
}

namespace {

std::vector<double> power_table(double gamma, std::int64_t size) {
  std::vector<double> t(static_cast<std::size_t>(size + 1));
  t[0] = std::numeric_limits<double>::quiet_NaN();
  for (std::int64_t i = 1; i <= size; ++i) t[static_cast<std::size_t>(i)] = std::pow(static_cast<double>(i), -gamma);
  return t;
}

// Segment-wise evaluation: between the singular points both distances are
// affine in l, so each segment is a pair of contiguous table walks.
double cross_sum_tables(std::span<const double> left, std::span<const double> right, std::int64_t j,
                        std::int64_t k, std::int64_t radius) {
  const double* a = left.data();
  const double* b = right.data();
  double total = 0.0;
  const auto lo = std::min(j, k);
  const auto hi = std::max(j, k);

  // l < lo: |j-l| = j-l, |k-l| = k-l.
  double acc = 0.0;
  for (std::int64_t l = -radius; l < lo; ++l) acc += a[j - l] * b[k - l];
  total += acc;

  // lo < l < hi.
  acc = 0.0;
  if (j < k) {
    for (std::int64_t l = lo + 1; l < hi; ++l) acc += a[l - j] * b[k - l];
  } else {
    for (std::int64_t l = lo + 1; l < hi; ++l) acc += a[j - l] * b[l - k];
  }
  total += acc;

  // l > hi.
  acc = 0.0;
  for (std::int64_t l = hi + 1; l <= radius; ++l) acc += a[l - j] * b[l - k];
  total += acc;
  return total;
}

void check_cross_args(std::int64_t j, std::int64_t k, double gl, double gr, std::int64_t radius) {
  if (j == k) throw DomainError("kernel_cross_sum requires j != k");
  if (!(gl > 0.5) || !(gr > 0.5)) throw DomainError("kernel_cross_sum requires exponents > 1/2");
  const auto gap = std::llabs(j - k);
  if (radius < 2 * gap) throw DomainError("kernel_cross_sum requires radius >= 2|j-k|");
  if (std::llabs(j) > radius || std::llabs(k) > radius) {
    throw DomainError("kernel_cross_sum requires |j|, |k| <= radius");
  }
}

}  // namespace

double kernel_cross_sum(std::int64_t j, std::int64_t k, double gamma_left, double gamma_right,
                        std::int64_t radius) {
  check_cross_args(j, k, gamma_left, gamma_right, radius);
  const auto size = radius + std::max(std::llabs(j), std::llabs(k));
  const auto left = power_table(gamma_left, size);
  const auto right = gamma_right == gamma_left ? left : power_table(gamma_right, size);
  return cross_sum_tables(left, right, j, k, radius);
}

double kernel_bound(double gamma, KernelPairing pairing, std::int64_t lag) {
  const double d = static_cast<double>(lag);
  if (pairing == KernelPairing::mixed) return std::pow(d, -gamma);
  if (gamma < 1.0) return std::pow(d, 1.0 - 2.0 * gamma);
  if (gamma == 1.0) return std::log(d + 1.0) / d;
  return std::pow(d, -gamma);
}

double KernelBoundReport::max_ratio() const {
  double r = 0.0;
  for (const auto& row : rows) r = std::max(r, row.ratio);
  return r;
}

double KernelBoundReport::min_ratio() const {
  double r = std::numeric_limits<double>::infinity();
  for (const auto& row : rows) r = std::min(r, row.ratio);
  return r;
}

double KernelBoundReport::spread() const { return max_ratio() / min_ratio(); }

KernelBoundReport verify_kernel_bound(double gamma, std::int64_t lag_max, std::int64_t radius,
                                      KernelPairing pairing, int jobs) {
  if (!(gamma > 0.5)) throw DomainError("verify_kernel_bound requires gamma > 1/2");
  if (pairing == KernelPairing::mixed && !(gamma < 1.0)) {
    throw DomainError("mixed kernel pairing requires gamma in (1/2, 1)");
  }
  if (lag_max < 2) throw DomainError("verify_kernel_bound requires lag_max >= 2");
  if (radius < 2 * lag_max) throw DomainError("verify_kernel_bound requires radius >= 2 lag_max");

  const double right_gamma = pairing == KernelPairing::mixed ? 2.0 * gamma : gamma;
  const auto size = radius + lag_max;
  const auto left = power_table(gamma, size);
  const auto right = pairing == KernelPairing::mixed ? power_table(right_gamma, size) : left;

  KernelBoundReport report;
  report.gamma = gamma;
  report.pairing = pairing;
  report.radius = radius;
  report.rows.resize(static_cast<std::size_t>(lag_max - 1));
  parallel_for(report.rows.size(), jobs, [&](std::size_t i) {
    const auto lag = static_cast<std::int64_t>(i) + 2;
    auto& row = report.rows[i];
    row.lag = lag;
    row.sum = cross_sum_tables(left, right, lag, 0, radius);
    row.bound = kernel_bound(gamma, pairing, lag);
    row.ratio = row.sum / row.bound;
  });
  return report;
}

std::string to_tsv(const KernelBoundReport& report) {
  std::ostringstream out;
  out << "lag\tsum\tbound\tratio\n";
  for (const auto& row : report.rows) {
    out << row.lag << '\t' << format_real(row.sum) << '\t' << format_real(row.bound) << '\t'
        << format_real(row.ratio) << '\n';
  }
  return out.str();
}

}  // namespace mslln
