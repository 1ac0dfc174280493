#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mslln {

/// Shortest decimal form that round-trips ("0.5", "1", "0.0099503"); "inf",
/// "-inf" and "nan" for non-finite values.
std::string format_real(double value);

/// Parses a decimal real, accepting "inf"/"Inf"/"infinity". Returns false on
/// any trailing garbage.
bool parse_real(std::string_view text, double& value);

/// Comma-separated list of reals ("0.5,0.6,1").
std::vector<double> parse_real_list(std::string_view text);
std::vector<int> parse_int_list(std::string_view text);
std::string join_reals(std::span<const double> values, std::string_view sep = ",");

std::string_view trim(std::string_view text);
std::vector<std::string_view> split(std::string_view text, char delimiter);

}  // namespace mslln
