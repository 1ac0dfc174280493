#include "inputs.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "mslln/format.hpp"

namespace mslln::cli {

WindowMode parse_window_mode(std::string_view text) {
  if (text == "auto") return WindowMode::automatic;
  if (text == "dates") return WindowMode::dates;
  if (text == "offsets") return WindowMode::offsets;
  if (text == "full") return WindowMode::full;
  throw UsageError("unknown window mode '" + std::string(text) + "' (auto, dates, offsets, full)");
}

std::string_view to_string(InputKind kind) {
  switch (kind) {
    case InputKind::prices: return "prices";
    case InputKind::ensemble: return "ensemble";
    case InputKind::column: return "column";
  }
  return "column";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace {

std::vector<std::string> header_fields(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const char delim = t.find('\t') != std::string_view::npos ? '\t' : ',';
    std::vector<std::string> out;
    for (auto f : split(t, delim)) {
      f = trim(f);
      if (f.size() >= 2 && f.front() == '"' && f.back() == '"') f = f.substr(1, f.size() - 2);
      out.emplace_back(f);
    }
    if (!out.empty() && out.front().starts_with("\xEF\xBB\xBF")) out.front().erase(0, 3);
    return out;
  }
  throw SchemaError("file has no header");
}

bool contains(const std::vector<std::string>& fields, std::string_view name) {
  for (const auto& f : fields) {
    if (f == name) return true;
  }
  return false;
}

std::vector<double> cut_prices(const SeriesInput& in, WindowMode mode, std::string& description) {
  const auto returns = log_returns(*in.prices);
  if (mode == WindowMode::full) {
    description = "full";
    return returns;
  }
  if (mode != WindowMode::offsets) {
    if (const auto range = date_range(*in.prices, kReferenceFrom, kReferenceTo)) {
      description = "dates " + format_date(in.prices->dates[range->first]) + ".." +
                    format_date(in.prices->dates[range->last]);
      return {returns.begin() + static_cast<std::ptrdiff_t>(range->first),
              returns.begin() + static_cast<std::ptrdiff_t>(range->last) + 1};
    }
    if (mode == WindowMode::dates) {
      throw DataError(in.path + " does not cover " + format_date(kReferenceFrom) + ".." +
                      format_date(kReferenceTo));
    }
  }
  description = "offsets len-2700..len-100";
  return select_window(returns);
}

}  // namespace

SeriesInput load_series(const std::string& path, std::string_view column, std::string_view label,
                        WindowMode mode) {
  SeriesInput in;
  in.path = path;
  in.label = label.empty() ? std::filesystem::path(path).stem().string() : std::string(label);
  const auto text = read_file(path);
  const auto header = header_fields(text);
  std::istringstream stream(text);

  if (contains(header, "Date")) {
    in.kind = InputKind::prices;
    in.prices = parse_prices(stream, column.empty() ? "Adj Close" : column);
    in.prices->label = in.label;
    in.values = cut_prices(in, mode, in.window);
    return in;
  }
  if (mode == WindowMode::dates) throw UsageError("--window dates needs a dated price file");
  if (!header.empty() && header.front() == "k") {
    in.kind = InputKind::ensemble;
    in.values = parse_column(stream, column.empty() ? "d" : column);
  } else {
    in.kind = InputKind::column;
    in.values = parse_column(stream, column);
  }
  if (mode == WindowMode::offsets) {
    in.values = select_window(in.values);
    in.window = "offsets len-2700..len-100";
  } else {
    in.window = "full";
  }
  return in;
}

}  // namespace mslln::cli
