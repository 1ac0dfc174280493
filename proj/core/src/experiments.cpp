#include "mslln/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "mslln/error.hpp"
#include "mslln/parallel.hpp"
#include "mslln/rng.hpp"
#include "mslln/statistic.hpp"

namespace mslln {

double median(std::vector<double> values) {
  if (values.empty()) throw LengthError("median of an empty set");
  const auto mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw LengthError("slope needs two or more paired points");
  double mx = 0.0, my = 0.0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw DomainError("log-log slope needs positive values");
    mx += std::log(x[i]);
    my += std::log(y[i]);
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

std::vector<std::uint64_t> replicate_seeds(std::uint64_t base, std::size_t count) {
  std::vector<std::uint64_t> seeds(count);
  for (std::size_t i = 0; i < count; ++i) seeds[i] = derive_stream(base, i + 1);
  return seeds;
}

RatioStudy partial_sum_ratio_study(const SeriesSource& source, double mean, std::span<const std::uint64_t> seeds,
                                   std::int64_t n_early, std::int64_t n_late, std::span<const double> p_values,
                                   int jobs) {
  if (!(n_early >= 1 && n_early < n_late)) throw LengthError("ratio study needs 1 <= n_early < n_late");
  RatioStudy out;
  out.p_values.assign(p_values.begin(), p_values.end());
  out.ratios.assign(p_values.size(), std::vector<double>(seeds.size()));
  parallel_for(seeds.size(), jobs, [&](std::size_t rep) {
    const auto d = source(seeds[rep]);
    if (static_cast<std::int64_t>(d.size()) < n_late) throw LengthError("replicate shorter than n_late");
    for (std::size_t i = 0; i < p_values.size(); ++i) {
      const auto f = centered_partial_sum_trace(d, mean, 1.0 / p_values[i]);
      out.ratios[i][rep] = f[static_cast<std::size_t>(n_late - 1)] / f[static_cast<std::size_t>(n_early - 1)];
    }
  });
  for (const auto& r : out.ratios) out.medians.push_back(median(r));
  return out;
}

RatioStudy partial_sum_ratio_study(const ProcessConfig& config, std::span<const std::uint64_t> seeds,
                                   std::int64_t n_early, std::int64_t n_late, std::span<const double> p_values,
                                   int jobs) {
  if (n_late > config.length) throw LengthError("n_late exceeds the simulated length");
  const auto source = [&config](std::uint64_t seed) { return simulate_paths(config, seed).d; };
  return partial_sum_ratio_study(source, expected_product(config), seeds, n_early, n_late, p_values, jobs);
}

double VarianceStudy::relative_error() const { return std::abs(simulated - expected) / expected; }

VarianceStudy variance_study(const ProcessConfig& config, std::span<const std::uint64_t> seeds, int jobs) {
  if (seeds.empty()) throw ConfigError("variance study needs replicates");
  std::vector<double> second_moment(seeds.size());
  parallel_for(seeds.size(), jobs, [&](std::size_t rep) {
    const auto ens = simulate_paths(config, seeds[rep]);
    double acc = 0.0;
    for (const double v : ens.x[0]) acc += v * v;
    second_moment[rep] = acc / static_cast<double>(ens.x[0].size());
  });
  VarianceStudy st;
  for (const double v : second_moment) st.simulated += v;
  st.simulated /= static_cast<double>(seeds.size());
  st.expected = coefficient_energy(config.coeffs[0]) * innovation_variance(config.innov);
  return st;
}

std::vector<double> autocovariance(std::span<const double> x, std::size_t max_lag) {
  if (x.size() <= max_lag) throw LengthError("series shorter than the largest lag");
  double mean = 0.0;
  for (const double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  std::vector<double> centered(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) centered[i] = x[i] - mean;
  std::vector<double> out(max_lag);
  for (std::size_t h = 1; h <= max_lag; ++h) {
    double acc = 0.0;
    for (std::size_t k = 0; k + h < centered.size(); ++k) acc += centered[k] * centered[k + h];
    out[h - 1] = acc / static_cast<double>(x.size());
  }
  return out;
}

std::vector<double> mean_autocovariance(const ProcessConfig& config, std::span<const std::uint64_t> seeds,
                                        std::size_t max_lag, int jobs) {
  if (seeds.empty()) throw ConfigError("autocovariance study needs replicates");
  std::vector<std::vector<double>> per_rep(seeds.size());
  parallel_for(seeds.size(), jobs, [&](std::size_t rep) {
    per_rep[rep] = autocovariance(simulate_paths(config, seeds[rep]).x[0], max_lag);
  });
  std::vector<double> out(max_lag, 0.0);
  for (const auto& v : per_rep) {
    for (std::size_t h = 0; h < max_lag; ++h) out[h] += v[h];
  }
  for (auto& v : out) v /= static_cast<double>(seeds.size());
  return out;
}

}  // namespace mslln
