#include "mslln/innovations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mslln/error.hpp"
#include "mslln/format.hpp"
#include "mslln/keyvalue.hpp"
#include "mslln/rng.hpp"

namespace mslln {

std::string_view to_string(InnovationFamily family) {
  switch (family) {
    case InnovationFamily::gaussian: return "gaussian";
    case InnovationFamily::student_t: return "student_t";
    case InnovationFamily::symmetric_pareto: return "symmetric_pareto";
  }
  return "unknown";
}

InnovationFamily parse_family(std::string_view name) {
  if (name == "gaussian" || name == "normal") return InnovationFamily::gaussian;
  if (name == "student_t" || name == "t") return InnovationFamily::student_t;
  if (name == "symmetric_pareto" || name == "pareto") return InnovationFamily::symmetric_pareto;
  throw ConfigError("unknown innovation family '" + std::string(name) + "'");
}

void InnovationSpec::validate() const {
  if (!(scale > 0.0) || !std::isfinite(scale)) throw ConfigError("innovation scale must be positive");
  if (family != InnovationFamily::gaussian && !(df_or_alpha > 0.0)) {
    throw ConfigError("innovation df/alpha must be positive");
  }
  if (!symmetric) throw ConfigError("only symmetric innovation families are supported");
}

double tail_coefficient(const InnovationSpec& spec) {
  spec.validate();
  if (spec.family == InnovationFamily::gaussian) return std::numeric_limits<double>::infinity();
  return spec.df_or_alpha;
}

double innovation_variance(const InnovationSpec& spec) {
  spec.validate();
  const double s2 = spec.scale * spec.scale;
  const double a = spec.df_or_alpha;
  switch (spec.family) {
    case InnovationFamily::gaussian: return s2;
    case InnovationFamily::student_t:
      return a > 2.0 ? s2 * a / (a - 2.0) : std::numeric_limits<double>::infinity();
    case InnovationFamily::symmetric_pareto:
      return a > 2.0 ? s2 * a / (a - 2.0) : std::numeric_limits<double>::infinity();
  }
  return std::numeric_limits<double>::quiet_NaN();
}

StreamSeeds stream_seeds(std::uint64_t seed) {
  StreamSeeds s;
  s.magnitude = derive_stream(seed, 0);
  // Positive 63-bit key; negating it flips every sign.
  s.sign = static_cast<std::int64_t>(derive_stream(seed, 1) >> 1) | 1;
  return s;
}

namespace {

// Bailey's polar method: exact Student t for any df > 0.
double student_t_magnitude(CounterRng& rng, double df) {
  for (;;) {
    const double u = 2.0 * rng.uniform() - 1.0;
    const double v = 2.0 * rng.uniform() - 1.0;
    const double w = u * u + v * v;
    if (w > 0.0 && w <= 1.0) {
      return std::abs(u * std::sqrt(df * (std::pow(w, -2.0 / df) - 1.0) / w));
    }
  }
}

}  // namespace

std::vector<double> sample(const InnovationSpec& spec, std::size_t count, StreamSeeds seeds) {
  spec.validate();
  if (count == 0) throw LengthError("sample count must be >= 1");
  if (seeds.sign == 0) throw ConfigError("sign stream seed must be non-zero");

  std::vector<double> out(count);
  CounterRng magnitude(seeds.magnitude);
  const CounterRng sign_stream(static_cast<std::uint64_t>(seeds.sign < 0 ? -seeds.sign : seeds.sign));
  const double polarity = seeds.sign < 0 ? -1.0 : 1.0;

  for (std::size_t i = 0; i < count; ++i) {
    double m = 0.0;
    switch (spec.family) {
      case InnovationFamily::gaussian: m = std::abs(magnitude.normal()); break;
      case InnovationFamily::student_t: m = student_t_magnitude(magnitude, spec.df_or_alpha); break;
      case InnovationFamily::symmetric_pareto:
        // P(|X| > x) = (x / scale)^-alpha for x >= scale.
        m = std::pow(magnitude.uniform(), -1.0 / spec.df_or_alpha);
        break;
    }
    const bool negative = (sign_stream.at(i) >> 63) != 0;
    out[i] = (negative ? -polarity : polarity) * spec.scale * m;
  }
  return out;
}

std::vector<double> sample(const InnovationSpec& spec, std::size_t count, std::uint64_t seed) {
  return sample(spec, count, stream_seeds(seed));
}

double empirical_tail_check(std::span<const double> samples, double q, std::span<const double> grid) {
  if (samples.empty()) throw ConfigError("empirical_tail_check needs samples");
  if (grid.empty()) throw ConfigError("empirical_tail_check needs a non-empty grid");
  if (!(q >= 0.0)) throw DomainError("empirical_tail_check requires q >= 0");
  std::vector<double> mags(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) mags[i] = std::abs(samples[i]);
  std::sort(mags.begin(), mags.end());
  const double n = static_cast<double>(mags.size());
  double best = 0.0;
  for (const double x : grid) {
    if (!(x > 0.0)) throw DomainError("empirical_tail_check grid values must be positive");
    const auto above = mags.end() - std::upper_bound(mags.begin(), mags.end(), x);
    best = std::max(best, std::pow(x, q) * static_cast<double>(above) / n);
  }
  return best;
}

std::string to_keyvalue(const InnovationSpec& spec) {
  std::ostringstream out;
  out << "family = " << to_string(spec.family) << '\n';
  out << "alpha = " << format_real(spec.df_or_alpha) << '\n';
  out << "scale = " << format_real(spec.scale) << '\n';
  return out.str();
}

InnovationSpec innovation_from_section(const KeyValueSection& section) {
  section.reject_unknown({"family", "alpha", "df", "scale"});
  InnovationSpec spec;
  spec.family = parse_family(section.get_or("family", "gaussian"));
  if (section.has("df")) spec.df_or_alpha = section.get_real("df");
  if (section.has("alpha")) spec.df_or_alpha = section.get_real("alpha");
  if (section.has("scale")) spec.scale = section.get_real("scale");
  spec.validate();
  return spec;
}

InnovationSpec innovation_from_keyvalue(std::string_view text) {
  const auto doc = KeyValueDocument::parse(text);
  return innovation_from_section(doc.section(""));
}

}  // namespace mslln
