#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mslln/linproc.hpp"

namespace mslln {

/// Median of a copy of `values`; the mean of the two middle elements for
/// even sizes.
double median(std::vector<double> values);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Seeds 1..count passed through the stream mixer, a fixed replicate set.
std::vector<std::uint64_t> replicate_seeds(std::uint64_t base, std::size_t count);

/// Ratio f(n_late) / f(n_early) of the known-mean normalised partial sums
/// n^(-1/p) |sum_{k<=n} (d_k - E d)| for each p, per replicate.
struct RatioStudy {
  std::vector<double> p_values;
  std::vector<std::vector<double>> ratios;  ///< [p][replicate]
  std::vector<double> medians;              ///< per p
};

/// Produces the series d of one replicate from its seed.
using SeriesSource = std::function<std::vector<double>(std::uint64_t seed)>;

RatioStudy partial_sum_ratio_study(const SeriesSource& source, double mean, std::span<const std::uint64_t> seeds,
                                   std::int64_t n_early, std::int64_t n_late, std::span<const double> p_values,
                                   int jobs = 1);

RatioStudy partial_sum_ratio_study(const ProcessConfig& config, std::span<const std::uint64_t> seeds,
                                   std::int64_t n_early, std::int64_t n_late, std::span<const double> p_values,
                                   int jobs = 1);

/// Mean over replicates of (1/n) sum x_k^2 for component 1, against the
/// closed form sum_{|l|<=M} c_l^2 Var(xi).
struct VarianceStudy {
  double simulated = 0.0;
  double expected = 0.0;
  double relative_error() const;
};

VarianceStudy variance_study(const ProcessConfig& config, std::span<const std::uint64_t> seeds, int jobs = 1);

/// Sample autocovariance (1/n) sum (x_k - xbar)(x_{k+h} - xbar) of one path.
std::vector<double> autocovariance(std::span<const double> x, std::size_t max_lag);

/// Replicate-averaged autocovariance of component 1 at lags 1..max_lag.
std::vector<double> mean_autocovariance(const ProcessConfig& config, std::span<const std::uint64_t> seeds,
                                        std::size_t max_lag, int jobs = 1);

}  // namespace mslln
