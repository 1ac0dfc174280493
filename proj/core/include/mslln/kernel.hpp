#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mslln {

/// Power-law coefficient family c_l = scale * |l|^-sigma for 0 < |l| <= window,
/// c_0 = center_value. The slowly varying factor is the constant `scale`.
struct CoefficientSpec {
  double sigma = 0.75;
  double scale = 1.0;
  double center_value = 1.0;
  std::int64_t window = 1 << 14;

  /// Throws ConfigError unless sigma in (1/2, 1], scale > 0, window >= 1.
  void validate() const;
};

/// c_l for |l| <= spec.window; throws DomainError outside the window.
double coefficient(const CoefficientSpec& spec, std::int64_t l);

/// Dense kernel (c_{-M}, ..., c_M); element l + M holds c_l.
std::vector<double> coefficient_kernel(const CoefficientSpec& spec);

/// Sum of c_l^2 over |l| <= window.
double coefficient_energy(const CoefficientSpec& spec);

struct LPolyParams {
  int n = 1;
  double beta = 0.75;
};

/// Three-branch normalisation: x^(n(1-2b)+1) below the threshold (n+1)/(2n),
/// log(x+1) at it, 1 above it.
double l_poly(LPolyParams params, double x);

/// Sum over l in [-radius, radius], l not in {j, k}, of
/// |j-l|^-gamma_left * |k-l|^-gamma_right.
///
/// Requires j != k, both exponents > 1/2 and radius >= 2|j-k| so both
/// singular points are interior to the summation range.
double kernel_cross_sum(std::int64_t j, std::int64_t k, double gamma_left, double gamma_right,
                        std::int64_t radius);

enum class KernelPairing {
  equal,  ///< exponents (gamma, gamma) against the three-branch bound
  mixed,  ///< exponents (gamma, 2 gamma) against |j-k|^-gamma, gamma in (1/2, 1)
};

struct KernelBoundRow {
  std::int64_t lag = 0;
  double sum = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
};

struct KernelBoundReport {
  double gamma = 0.0;
  KernelPairing pairing = KernelPairing::equal;
  std::int64_t radius = 0;
  std::vector<KernelBoundRow> rows;

  double max_ratio() const;
  double min_ratio() const;
  /// max_ratio / min_ratio; a bounded spread means the sum tracks the bound
  /// up to a constant factor.
  double spread() const;
};

/// Bound shape for lag d: d^(1-2g) for g < 1, log(d+1)/d at g = 1, d^-g above;
/// the mixed pairing always uses d^-g.
double kernel_bound(double gamma, KernelPairing pairing, std::int64_t lag);

/// Evaluates kernel_cross_sum(d, 0, ...) / kernel_bound for d in [2, lag_max].
KernelBoundReport verify_kernel_bound(double gamma, std::int64_t lag_max, std::int64_t radius,
                                      KernelPairing pairing = KernelPairing::equal,
                                      int jobs = 1);

/// TSV with columns lag, sum, bound, ratio.
std::string to_tsv(const KernelBoundReport& report);

}  // namespace mslln
