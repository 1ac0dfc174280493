#include "mslln/format.hpp"

#include <charconv>
#include <cmath>

#include "mslln/error.hpp"

namespace mslln {

std::string format_real(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view text, char delimiter) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  for (;;) {
    const auto next = text.find(delimiter, pos);
    if (next == std::string_view::npos) {
      parts.push_back(text.substr(pos));
      return parts;
    }
    parts.push_back(text.substr(pos, next - pos));
    pos = next + 1;
  }
}

bool parse_real(std::string_view text, double& value) {
  text = trim(text);
  if (text.empty()) return false;
  std::string_view body = text;
  bool negative = false;
  if (body.front() == '+' || body.front() == '-') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  if (body == "inf" || body == "Inf" || body == "infinity" || body == "Infinity") {
    value = negative ? -HUGE_VAL : HUGE_VAL;
    return true;
  }
  if (text.front() == '+') text.remove_prefix(1);
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  return res.ec == std::errc{} && res.ptr == text.data() + text.size();
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  for (auto part : split(text, ',')) {
    double v = 0.0;
    if (!parse_real(part, v)) throw ConfigError("not a number: '" + std::string(part) + "'");
    out.push_back(v);
  }
  return out;
}

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  for (auto part : split(text, ',')) {
    part = trim(part);
    int v = 0;
    const auto res = std::from_chars(part.data(), part.data() + part.size(), v);
    if (res.ec != std::errc{} || res.ptr != part.data() + part.size()) {
      throw ConfigError("not an integer: '" + std::string(part) + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::string join_reals(std::span<const double> values, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += format_real(values[i]);
  }
  return out;
}

}  // namespace mslln
