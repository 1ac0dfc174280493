#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mslln/table.hpp"

namespace mslln {

/// Smoothing rates of the running mean (epsilon) and running s-th absolute
/// moment (rho), and the length of the initialisation period.
struct RunningMeanConfig {
  double epsilon = 0.005;
  double rho = 0.005;
  std::int64_t start = 601;

  void validate() const;
};

/// Offsets of the two trailing windows (counted from `start`) and the ratio
/// thresholds of the convergence rule.
struct VerdictRule {
  std::int64_t offset_half = 1000;
  std::int64_t offset_quarter = 1500;
  double ratio_whole = 1.2;
  double ratio_half = 1.05;

  void validate() const;
};

/// Reference series length the default offsets were laid out for.
inline constexpr std::int64_t kReferenceLength = 2601;

/// Scales start and both offsets by length / 2601 (rounded), for series
/// whose length differs from the reference window.
void make_proportional(std::int64_t length, RunningMeanConfig& cfg, VerdictRule& rule);

/// m_1 = x_1, m_t = (1 - eps) m_{t-1} + eps x_t.
std::vector<double> ewma(std::span<const double> series, double epsilon);

/// a_1 = x_1, a_t = (1 - 1/t) a_{t-1} + x_t / t: the running arithmetic mean
/// computed by the same recursion the reference R code uses.
std::vector<double> decaying_avg(std::span<const double> series);

/// f(k) = |sum_{j<=k} (|x_j - mu_j|^s - m_j)| / k^e with mu = ewma(x, eps)
/// and m = ewma(|x - mu|^s, rho).
struct MarcTrace {
  int s = 1;
  double exponent = 1.0;
  std::vector<double> f;
  std::vector<double> mu;
  std::vector<double> m;
  std::vector<double> cumsum;  ///< signed running sum before |.| and scaling
};

MarcTrace marcinkiewicz_trace(std::span<const double> x, int s, double exponent, const RunningMeanConfig& cfg);

/// Known-mean normalised partial sums n^-e |sum_{k<=n} (d_k - mean)|.
std::vector<double> centered_partial_sum_trace(std::span<const double> d, double mean, double exponent);

/// Averages f over [start, n], [start + offset_half, n] and
/// [start + offset_quarter, n] (1-based); Diverges if whole < 1.2 half, else
/// Diverges if half < 1.05 quarter, else Converges.
Verdict convergence_verdict(const MarcTrace& trace, const RunningMeanConfig& cfg, const VerdictRule& rule = {});
Verdict convergence_verdict(std::span<const double> f, std::int64_t start, const VerdictRule& rule = {});

inline const std::vector<int> kDefaultPowers{1, 2, 3};
inline const std::vector<double> kDefaultExponents{0.5, 0.6, 0.7, 0.8, 0.9, 1.0};

struct TableRequest {
  std::string label = "series";
  std::vector<int> s_list = kDefaultPowers;
  std::vector<double> exponents = kDefaultExponents;
  RunningMeanConfig cfg;
  VerdictRule rule;
  int jobs = 1;
  bool keep_traces = false;
};

struct AnalyzedTable {
  VerdictTable table;
  /// traces[i][j] for row i, column j when keep_traces is set.
  std::vector<std::vector<MarcTrace>> traces;
};

AnalyzedTable verdict_table(std::span<const double> x, const TableRequest& request);

/// CSV "k,f" of a trace, starting at k = start + 1 like the reference plots.
std::string trace_csv(const MarcTrace& trace, std::int64_t first_k = 1);

}  // namespace mslln
