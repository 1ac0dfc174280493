#include "mslln/rates.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "mslln/error.hpp"
#include "mslln/format.hpp"

namespace mslln {

namespace {

constexpr double kTol = 1e-9;

double reciprocal_or_inf(double numerator, double denominator) {
  return denominator <= 0.0 ? kInfinity : numerator / denominator;
}

void check_sigma(double sigma) {
  if (!(sigma > 0.5 && sigma <= 1.0)) throw DomainError("sigma must lie in (0.5, 1], got " + format_real(sigma));
}

// corollary_bound without the alpha0 > 1 requirement; the forward model and
// the inversion evaluate it at alpha_s = alpha_1 / s, which may be below 1.
double equal_sigma_bound(int s, double sigma, double alpha, bool relaxed) {
  if (relaxed || s == 2) return std::min({2.0, alpha, reciprocal_or_inf(1.0, 2.0 - (sigma + sigma))});
  if (s == 1) return reciprocal_or_inf(2.0, 3.0 - 2.0 * sigma);
  return std::min(alpha, reciprocal_or_inf(2.0, 3.0 - 2.0 * sigma));
}

}  // namespace

double corollary_bound(int s, double sigma, double alpha0, bool relaxed) {
  if (s < 1) throw ConfigError("s must be >= 1");
  check_sigma(sigma);
  if (!(alpha0 > 1.0)) throw DomainError("alpha0 must exceed 1");
  if (relaxed && s % 2 != 0) throw ConfigError("the relaxed bound needs s even");
  return equal_sigma_bound(s, sigma, alpha0, relaxed);
}

void RateInputs::validate() const {
  if (s < 1) throw ConfigError("s must be >= 1");
  if (sigmas.size() != 1 && static_cast<int>(sigmas.size()) != s) {
    throw ConfigError("sigma list has " + std::to_string(sigmas.size()) + " entries for s = " + std::to_string(s));
  }
  for (const double sg : sigmas) check_sigma(sg);
  if (!light_tailed && !(alpha0 > 1.0)) throw DomainError("alpha0 must exceed 1");
  if (relaxed && s % 2 != 0) throw ConfigError("the relaxed bound needs s even");
}

double theorem_bound(const RateInputs& in) {
  in.validate();
  auto sigma_at = [&](int i) { return in.sigmas.size() == 1 ? in.sigmas[0] : in.sigmas[static_cast<std::size_t>(i)]; };
  const double alpha = in.light_tailed ? kInfinity : in.alpha0;
  double min_sigma = sigma_at(0);
  for (int i = 1; i < in.s; ++i) min_sigma = std::min(min_sigma, sigma_at(i));

  if (in.relaxed) {
    double min_pair = kInfinity;
    for (int i = 0; i < in.s; ++i) {
      for (int j = i + 1; j < in.s; ++j) min_pair = std::min(min_pair, sigma_at(i) + sigma_at(j));
    }
    return std::min({2.0, alpha, reciprocal_or_inf(1.0, 2.0 - min_pair)});
  }
  if (in.s == 1) return reciprocal_or_inf(2.0, 3.0 - 2.0 * sigma_at(0));
  if (in.s == 2) return std::min({2.0, alpha, reciprocal_or_inf(1.0, 2.0 - (sigma_at(0) + sigma_at(1)))});
  return std::min(alpha, reciprocal_or_inf(2.0, 3.0 - 2.0 * min_sigma));
}

VerdictTable predict_table(double sigma, double alpha1, std::span<const int> s_list, std::span<const double> exponents,
                           std::string label) {
  if (s_list.empty() || exponents.empty()) throw ConfigError("prediction grids must be non-empty");
  check_sigma(sigma);
  if (!(alpha1 > 0.0)) throw DomainError("alpha1 must be positive");
  VerdictTable t;
  t.label = std::move(label);
  t.s_list.assign(s_list.begin(), s_list.end());
  t.exponents.assign(exponents.begin(), exponents.end());
  for (const int s : s_list) {
    if (s < 1) throw ConfigError("s must be >= 1");
    const double bound = equal_sigma_bound(s, sigma, alpha1 / s, false);
    std::vector<Outcome> row;
    for (const double e : exponents) {
      if (!(e > 0.0)) throw ConfigError("exponents must be positive");
      row.push_back(1.0 / e < bound ? Outcome::converges : Outcome::diverges);
    }
    t.outcomes.push_back(std::move(row));
  }
  t.details.assign(t.outcomes.size(), std::vector<std::optional<Verdict>>(exponents.size()));
  return t;
}

std::string_view to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::point: return "point";
    case BoundKind::lower_bound: return "lower_bound";
    case BoundKind::upper_bound: return "upper_bound";
    case BoundKind::unknown: return "unknown";
  }
  return "unknown";
}

std::string_view to_string(RowShape shape) {
  switch (shape) {
    case RowShape::flip: return "flip";
    case RowShape::all_converge: return "all_converge";
    case RowShape::all_diverge: return "all_diverge";
    case RowShape::inconsistent: return "inconsistent";
  }
  return "inconsistent";
}

namespace {

// Classifies columns [first, end) of a row (exponents ascending) as
// D-prefix / C-suffix and records the flip.
RowEvidence classify(const VerdictTable& t, std::size_t row, std::size_t first) {
  RowEvidence ev;
  ev.s = t.s_list[row];
  ev.row = t.row_string(row);
  const auto& cells = t.outcomes[row];
  const auto n = cells.size();
  std::size_t flip = first;
  while (flip < n && cells[flip] == Outcome::diverges) ++flip;
  for (std::size_t j = flip; j < n; ++j) {
    if (cells[j] == Outcome::diverges) {
      ev.shape = RowShape::inconsistent;
      ev.note = "converges left of a divergence; row excluded";
      return ev;
    }
  }
  // Whole-row monotonicity also covers columns skipped for sigma.
  for (std::size_t j = 1; j < n; ++j) {
    if (cells[j - 1] == Outcome::converges && cells[j] == Outcome::diverges) {
      ev.shape = RowShape::inconsistent;
      ev.note = "converges left of a divergence; row excluded";
      return ev;
    }
  }
  if (flip == first) {
    ev.shape = RowShape::all_converge;
    ev.first_converge = t.exponents[first];
  } else if (flip == n) {
    ev.shape = RowShape::all_diverge;
    ev.last_diverge = t.exponents[n - 1];
  } else {
    ev.shape = RowShape::flip;
    ev.last_diverge = t.exponents[flip - 1];
    ev.first_converge = t.exponents[flip];
    ev.flip_exponent = 0.5 * (ev.last_diverge + ev.first_converge);
  }
  return ev;
}

// Part of the rate bound that does not involve alpha_s. With sigma only known
// to be >= 1 (no LRD), s = 2 is capped by 2 alone and s > 2 is unconstrained.
double sigma_term(int s, const Estimate& sigma) {
  if (sigma.kind == BoundKind::lower_bound) return s == 2 ? 2.0 : kInfinity;
  const double sg = sigma.value;
  if (s == 2) return std::min(2.0, reciprocal_or_inf(1.0, 2.0 - (sg + sg)));
  return reciprocal_or_inf(2.0, 3.0 - 2.0 * sg);
}

void alpha_from_row(RowEvidence& ev, const Estimate& sigma) {
  const double s = ev.s;
  const double cap = sigma_term(ev.s, sigma);
  auto lower = [&](double p) {
    ev.alpha_s = {BoundKind::lower_bound, p};
    ev.alpha1 = {BoundKind::lower_bound, s * p};
    ev.alpha1_low = s * p;
  };
  switch (ev.shape) {
    case RowShape::inconsistent: return;
    case RowShape::all_converge:
      lower(1.0 / ev.first_converge);
      ev.note = "converges on the whole grid: alpha_s exceeds every tested p";
      return;
    case RowShape::all_diverge: {
      const double p_min = 1.0 / ev.last_diverge;
      if (cap <= p_min * (1.0 + kTol)) {
        ev.note = "divergence already implied by sigma; no tail information";
        return;
      }
      ev.alpha_s = {BoundKind::upper_bound, p_min};
      ev.alpha1 = {BoundKind::upper_bound, s * p_min};
      ev.alpha1_high = s * p_min;
      ev.note = "diverges on the whole grid: alpha_s <= smallest tested p";
      return;
    }
    case RowShape::flip: {
      const double p_diverge = 1.0 / ev.last_diverge;
      const double p_converge = 1.0 / ev.first_converge;
      if (cap <= p_diverge * (1.0 + kTol)) {
        lower(p_converge);
        ev.note = "flip explained by sigma; alpha_s only bounded below";
        return;
      }
      const double p_flip = 1.0 / ev.flip_exponent;
      ev.alpha_s = {BoundKind::point, p_flip};
      ev.alpha1 = {BoundKind::point, s * p_flip};
      ev.alpha1_low = s * p_converge;
      ev.alpha1_high = s * p_diverge;
      ev.note = "alpha_s equated with the flip p = 1/e*";
      return;
    }
  }
}

}  // namespace

ParamEstimate estimate_parameters(const VerdictTable& table) {
  table.check_shape();
  for (std::size_t j = 1; j < table.exponents.size(); ++j) {
    if (!(table.exponents[j] > table.exponents[j - 1])) throw DataError("exponent grid must be strictly increasing");
  }
  ParamEstimate est;
  est.label = table.label;

  const auto anchor = std::find(table.s_list.begin(), table.s_list.end(), 1);
  if (anchor == table.s_list.end()) throw DataError("verdict table for '" + table.label + "' has no s = 1 row");
  const auto anchor_row = static_cast<std::size_t>(anchor - table.s_list.begin());

  // The e = 1/2 (p = 2) column carries the CLT divergence and is ignored for sigma.
  std::size_t first = 0;
  while (first < table.exponents.size() && table.exponents[first] <= 0.5 + kTol) ++first;
  if (first == table.exponents.size()) throw DataError("no exponents above 1/2 to locate the s = 1 flip");

  auto sigma_ev = classify(table, anchor_row, first);
  switch (sigma_ev.shape) {
    case RowShape::inconsistent:
      throw DataError("s = 1 row of '" + table.label + "' is not D-prefix/C-suffix; cannot anchor sigma");
    case RowShape::all_converge:
      est.sigma = {BoundKind::lower_bound, 1.0};
      sigma_ev.note = "converges for every p < 2: no (or limited) LRD";
      break;
    case RowShape::all_diverge:
      est.sigma = {BoundKind::upper_bound, 1.5 - sigma_ev.last_diverge};
      sigma_ev.note = "diverges on the whole grid: sigma at or below the LRD range";
      est.notes.push_back("s = 1 row diverges everywhere; tail step skipped");
      break;
    case RowShape::flip:
      est.sigma = {BoundKind::point, 1.5 - sigma_ev.flip_exponent};
      sigma_ev.note = "sigma = 3/2 - e*";
      break;
  }
  est.evidence.push_back(sigma_ev);
  if (est.sigma.kind == BoundKind::upper_bound) return est;

  std::vector<double> points;
  double low = 0.0;
  double high = kInfinity;
  double point_low = kInfinity;
  double point_high = 0.0;
  double upper = kInfinity;
  double lower = 0.0;
  bool any_upper = false;
  bool any_lower = false;
  for (std::size_t i = 0; i < table.s_list.size(); ++i) {
    if (table.s_list[i] < 2) continue;
    auto ev = classify(table, i, 0);
    alpha_from_row(ev, est.sigma);
    if (ev.shape == RowShape::inconsistent) est.notes.push_back("row s = " + std::to_string(ev.s) + " excluded");
    switch (ev.alpha1.kind) {
      case BoundKind::point:
        points.push_back(ev.alpha1.value);
        point_low = std::min(point_low, ev.alpha1_low);
        point_high = std::max(point_high, ev.alpha1_high);
        break;
      case BoundKind::upper_bound:
        upper = std::min(upper, ev.alpha1.value);
        any_upper = true;
        break;
      case BoundKind::lower_bound:
        lower = std::max(lower, ev.alpha1.value);
        any_lower = true;
        break;
      case BoundKind::unknown: break;
    }
    low = std::max(low, ev.alpha1_low);
    high = std::min(high, ev.alpha1_high);
    est.evidence.push_back(std::move(ev));
  }

  if (!points.empty()) {
    est.alpha1 = {BoundKind::point, std::accumulate(points.begin(), points.end(), 0.0) / static_cast<double>(points.size())};
  } else if (any_upper) {
    est.alpha1 = {BoundKind::upper_bound, upper};
  } else if (any_lower) {
    est.alpha1 = {BoundKind::lower_bound, lower};
  }
  // Bound-only rows restrict the interval; point rows contribute their hull
  // so the averaged point always lies inside it.
  const double bound_low = any_lower ? lower : 0.0;
  const double bound_high = any_upper ? upper : kInfinity;
  if (points.empty()) {
    est.alpha1_low = low;
    est.alpha1_high = high;
  } else {
    est.alpha1_low = std::max(point_low, bound_low);
    est.alpha1_high = std::min(point_high, bound_high);
    if (est.alpha1_low > est.alpha1_high * (1.0 + kTol)) {
      est.alpha1_low = point_low;
      est.alpha1_high = point_high;
      est.notes.push_back("bound rows contradict the point rows at grid resolution; interval from point rows only");
    }
  }
  return est;
}

namespace {

nlohmann::json real_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

nlohmann::json estimate_json(const Estimate& e) {
  return {{"kind", std::string(to_string(e.kind))}, {"value", real_or_null(e.value)}};
}

nlohmann::json param_json(const ParamEstimate& est) {
  nlohmann::json j;
  j["series"] = est.label;
  j["sigma"] = estimate_json(est.sigma);
  auto alpha = estimate_json(est.alpha1);
  alpha["interval"] = {real_or_null(est.alpha1_low), real_or_null(est.alpha1_high)};
  j["alpha1"] = alpha;
  nlohmann::json ev = nlohmann::json::array();
  for (const auto& r : est.evidence) {
    ev.push_back({{"s", r.s},
                  {"row", r.row},
                  {"shape", std::string(to_string(r.shape))},
                  {"last_diverge", real_or_null(r.last_diverge)},
                  {"first_converge", real_or_null(r.first_converge)},
                  {"flip_exponent", real_or_null(r.flip_exponent)},
                  {"alpha_s", estimate_json(r.alpha_s)},
                  {"alpha1", estimate_json(r.alpha1)},
                  {"alpha1_interval", {real_or_null(r.alpha1_low), real_or_null(r.alpha1_high)}},
                  {"note", r.note}});
  }
  j["evidence"] = ev;
  j["notes"] = est.notes;
  return j;
}

}  // namespace

std::string to_json(const ParamEstimate& estimate) { return param_json(estimate).dump(2) + "\n"; }

std::string to_json(std::span<const ParamEstimate> estimates) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : estimates) arr.push_back(param_json(e));
  return arr.dump(2) + "\n";
}

}  // namespace mslln
