#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "mslln/table.hpp"

namespace mslln {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Largest p for which the normalised partial sums of (x_k)^s vanish when all
/// components share one coefficient family:
///   s = 1:  2/(3-2 sigma)
///   s = 2:  2 ^ alpha0 ^ 1/(2-2 sigma)
///   s > 2:  alpha0 ^ 2/(3-2 sigma)
/// and, for symmetric innovations with s even (`relaxed`), 2 ^ alpha0 ^ 1/(2-2 sigma).
/// Non-positive denominators make their term +inf. alpha0 may be +inf.
double corollary_bound(int s, double sigma, double alpha0, bool relaxed = false);

/// Inputs of the general product bound.
struct RateInputs {
  int s = 1;
  std::vector<double> sigmas;  ///< s entries, or one shared value
  double alpha0 = kInfinity;
  bool relaxed = false;       ///< shared symmetric innovations, s even
  bool light_tailed = false;  ///< E xi^(2s) finite: alpha0 drops out

  void validate() const;
};

/// Product bound with per-component decay exponents:
///   s = 1:  2/(3-2 sigma_1)
///   s = 2:  2 ^ alpha0 ^ 1/(2-sigma_1-sigma_2)
///   s > 2:  alpha0 ^ 2/(3-2 min sigma_i)
///   relaxed: 2 ^ alpha0 ^ 1/(2 - min_{i<j}(sigma_i + sigma_j))
double theorem_bound(const RateInputs& inputs);

/// Forward model: cell (s, e) converges iff 1/e < corollary_bound(s, sigma, alpha1/s).
VerdictTable predict_table(double sigma, double alpha1, std::span<const int> s_list,
                           std::span<const double> exponents, std::string label = "predicted");

enum class BoundKind { point, lower_bound, upper_bound, unknown };
std::string_view to_string(BoundKind kind);

struct Estimate {
  BoundKind kind = BoundKind::unknown;
  double value = std::numeric_limits<double>::quiet_NaN();
};

enum class RowShape { flip, all_converge, all_diverge, inconsistent };
std::string_view to_string(RowShape shape);

/// What one table row says about (sigma, alpha_1).
struct RowEvidence {
  int s = 0;
  std::string row;
  RowShape shape = RowShape::inconsistent;
  double last_diverge = std::numeric_limits<double>::quiet_NaN();   ///< e_D
  double first_converge = std::numeric_limits<double>::quiet_NaN(); ///< e_C
  double flip_exponent = std::numeric_limits<double>::quiet_NaN();  ///< (e_D + e_C) / 2
  Estimate alpha_s;   ///< constraint on the tail index of |xi|^s
  Estimate alpha1;    ///< same constraint converted with alpha_1 = s alpha_s
  double alpha1_low = 0.0;        ///< interval implied by the grid
  double alpha1_high = kInfinity;
  std::string note;
};

struct ParamEstimate {
  std::string label;
  Estimate sigma;
  Estimate alpha1;
  /// Interval for alpha_1 implied by the grid resolution (bounds inclusive).
  double alpha1_low = 0.0;
  double alpha1_high = kInfinity;
  std::vector<RowEvidence> evidence;
  std::vector<std::string> notes;
};

/// Inverts a verdict table. The s = 1 row fixes sigma = 1.5 - e* from its
/// D->C flip; each s >= 2 row then constrains alpha_s through the matching
/// branch of corollary_bound, converted to alpha_1 = s alpha_s. Point values
/// are averaged over rows; upper bounds combine by minimum.
ParamEstimate estimate_parameters(const VerdictTable& table);

std::string to_json(const ParamEstimate& estimate);
std::string to_json(std::span<const ParamEstimate> estimates);

}  // namespace mslln
