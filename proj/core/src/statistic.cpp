#include "mslln/statistic.hpp"

#include <cmath>
#include <sstream>

#include "mslln/error.hpp"
#include "mslln/format.hpp"
#include "mslln/parallel.hpp"

namespace mslln {

void RunningMeanConfig::validate() const {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("epsilon must lie in (0, 1)");
  if (!(rho > 0.0 && rho < 1.0)) throw ConfigError("rho must lie in (0, 1)");
  if (start < 1) throw ConfigError("start must be >= 1");
}

void VerdictRule::validate() const {
  if (offset_half < 1 || offset_quarter <= offset_half) {
    throw ConfigError("verdict offsets must satisfy 1 <= half < quarter");
  }
  if (!(ratio_whole > 0.0) || !(ratio_half > 0.0)) throw ConfigError("verdict thresholds must be positive");
}

void make_proportional(std::int64_t length, RunningMeanConfig& cfg, VerdictRule& rule) {
  const double scale = static_cast<double>(length) / static_cast<double>(kReferenceLength);
  auto scaled = [scale](std::int64_t v) { return std::max<std::int64_t>(1, std::llround(static_cast<double>(v) * scale)); };
  cfg.start = scaled(cfg.start);
  rule.offset_half = scaled(rule.offset_half);
  rule.offset_quarter = std::max(rule.offset_half + 1, scaled(rule.offset_quarter));
}

std::vector<double> ewma(std::span<const double> series, double epsilon) {
  if (series.empty()) throw LengthError("ewma needs a non-empty series");
  std::vector<double> out(series.size());
  out[0] = series[0];
  for (std::size_t t = 1; t < series.size(); ++t) out[t] = (1.0 - epsilon) * out[t - 1] + epsilon * series[t];
  return out;
}

std::vector<double> decaying_avg(std::span<const double> series) {
  if (series.empty()) throw LengthError("decaying_avg needs a non-empty series");
  std::vector<double> out(series.size());
  out[0] = series[0];
  for (std::size_t i = 1; i < series.size(); ++i) {
    const double w = 1.0 / static_cast<double>(i + 1);
    out[i] = (1.0 - w) * out[i - 1] + w * series[i];
  }
  return out;
}

namespace {

double abs_power(double v, int s) {
  v = std::abs(v);
  switch (s) {
    case 1: return v;
    case 2: return v * v;
    default: return std::pow(v, static_cast<double>(s));
  }
}

void check_exponent(double e) {
  if (!(e > 0.0 && e <= 1.0)) throw ConfigError("exponent 1/p must lie in (0, 1], got " + format_real(e));
}

}  // namespace

MarcTrace marcinkiewicz_trace(std::span<const double> x, int s, double exponent, const RunningMeanConfig& cfg) {
  cfg.validate();
  check_exponent(exponent);
  if (s < 1) throw ConfigError("power s must be >= 1");
  if (static_cast<std::int64_t>(x.size()) < cfg.start) {
    throw LengthError("series of length " + std::to_string(x.size()) + " is shorter than start = " +
                      std::to_string(cfg.start));
  }
  MarcTrace tr;
  tr.s = s;
  tr.exponent = exponent;
  tr.mu = ewma(x, cfg.epsilon);
  std::vector<double> residual(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) residual[i] = abs_power(x[i] - tr.mu[i], s);
  tr.m = ewma(residual, cfg.rho);

  tr.f.resize(x.size());
  tr.cumsum.resize(x.size());
  // R accumulates cumsum in long double.
  long double acc = 0.0L;
  for (std::size_t i = 0; i < x.size(); ++i) {
    acc += static_cast<long double>(residual[i] - tr.m[i]);
    tr.cumsum[i] = static_cast<double>(acc);
    tr.f[i] = std::abs(tr.cumsum[i]) / std::pow(static_cast<double>(i + 1), exponent);
  }
  return tr;
}

std::vector<double> centered_partial_sum_trace(std::span<const double> d, double mean, double exponent) {
  if (!(exponent > 0.0)) throw ConfigError("exponent must be positive");
  std::vector<double> f(d.size());
  long double acc = 0.0L;
  for (std::size_t i = 0; i < d.size(); ++i) {
    acc += static_cast<long double>(d[i] - mean);
    f[i] = std::abs(static_cast<double>(acc)) / std::pow(static_cast<double>(i + 1), exponent);
  }
  return f;
}

Verdict convergence_verdict(std::span<const double> f, std::int64_t start, const VerdictRule& rule) {
  rule.validate();
  if (start < 1) throw ConfigError("start must be >= 1");
  const auto n = static_cast<std::int64_t>(f.size());
  if (n < start + rule.offset_quarter + 1) {
    throw LengthError("trace of length " + std::to_string(n) + " needs at least " +
                      std::to_string(start + rule.offset_quarter + 1) + " points for the verdict rule");
  }
  auto tail_mean = [&](std::int64_t first_1based) {
    return decaying_avg(f.subspan(static_cast<std::size_t>(first_1based - 1))).back();
  };
  Verdict v;
  v.mean_whole = tail_mean(start);
  v.mean_half = tail_mean(start + rule.offset_half);
  v.mean_quarter = tail_mean(start + rule.offset_quarter);
  v.ratios = {v.mean_whole / v.mean_half, v.mean_half / v.mean_quarter};
  if (v.mean_whole < rule.ratio_whole * v.mean_half) {
    v.outcome = Outcome::diverges;
  } else if (v.mean_half < rule.ratio_half * v.mean_quarter) {
    v.outcome = Outcome::diverges;
  } else {
    v.outcome = Outcome::converges;
  }
  return v;
}

Verdict convergence_verdict(const MarcTrace& trace, const RunningMeanConfig& cfg, const VerdictRule& rule) {
  cfg.validate();
  return convergence_verdict(trace.f, cfg.start, rule);
}

AnalyzedTable verdict_table(std::span<const double> x, const TableRequest& request) {
  if (request.s_list.empty() || request.exponents.empty()) throw ConfigError("verdict table grids must be non-empty");
  request.cfg.validate();
  request.rule.validate();
  for (const double e : request.exponents) check_exponent(e);

  const auto rows = request.s_list.size();
  const auto cols = request.exponents.size();
  AnalyzedTable out;
  auto& t = out.table;
  t.label = request.label;
  t.s_list = request.s_list;
  t.exponents = request.exponents;
  t.outcomes.assign(rows, std::vector<Outcome>(cols, Outcome::diverges));
  t.details.assign(rows, std::vector<std::optional<Verdict>>(cols));
  if (request.keep_traces) out.traces.assign(rows, std::vector<MarcTrace>(cols));

  parallel_for(rows * cols, request.jobs, [&](std::size_t cell) {
    const auto i = cell / cols;
    const auto j = cell % cols;
    auto trace = marcinkiewicz_trace(x, request.s_list[i], request.exponents[j], request.cfg);
    const auto v = convergence_verdict(trace, request.cfg, request.rule);
    t.outcomes[i][j] = v.outcome;
    t.details[i][j] = v;
    if (request.keep_traces) out.traces[i][j] = std::move(trace);
  });
  return out;
}

std::string trace_csv(const MarcTrace& trace, std::int64_t first_k) {
  std::ostringstream out;
  out << "k,f\n";
  for (std::size_t i = static_cast<std::size_t>(std::max<std::int64_t>(first_k, 1) - 1); i < trace.f.size(); ++i) {
    out << (i + 1) << ',' << format_real(trace.f[i]) << '\n';
  }
  return out.str();
}

}  // namespace mslln
