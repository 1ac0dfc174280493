#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mslln {

enum class InnovationFamily { gaussian, student_t, symmetric_pareto };

std::string_view to_string(InnovationFamily family);
InnovationFamily parse_family(std::string_view name);

/// Zero-mean i.i.d. innovation law. `df_or_alpha` is the degrees of freedom of
/// student_t or the tail index of symmetric_pareto; gaussian ignores it.
struct InnovationSpec {
  InnovationFamily family = InnovationFamily::gaussian;
  double df_or_alpha = 2.0;
  double scale = 1.0;
  bool symmetric = true;

  void validate() const;
};

/// Supremum of q with sup_x x^q P(|X| > x) < inf: +inf for gaussian,
/// df_or_alpha otherwise.
double tail_coefficient(const InnovationSpec& spec);

/// E[X^2]; +inf when the second moment does not exist.
double innovation_variance(const InnovationSpec& spec);

/// Keys of the two streams consumed by the samplers. Magnitudes come from
/// `magnitude`; the sign of draw i is bit 63 of output i of the stream keyed
/// by |sign|, flipped when `sign` is negative.
struct StreamSeeds {
  std::uint64_t magnitude = 0;
  std::int64_t sign = 1;
};

StreamSeeds stream_seeds(std::uint64_t seed);

/// `count` draws, fully determined by (spec, count, seed).
std::vector<double> sample(const InnovationSpec& spec, std::size_t count, std::uint64_t seed);
std::vector<double> sample(const InnovationSpec& spec, std::size_t count, StreamSeeds seeds);

/// max over grid x of x^q * #{|v| > x} / n. A sampler sanity probe, not an
/// estimator.
double empirical_tail_check(std::span<const double> samples, double q, std::span<const double> grid);

class KeyValueSection;

/// Flat key-value block: family, alpha, scale.
std::string to_keyvalue(const InnovationSpec& spec);
InnovationSpec innovation_from_keyvalue(std::string_view text);
InnovationSpec innovation_from_section(const KeyValueSection& section);

}  // namespace mslln
