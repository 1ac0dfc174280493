#include "mslln/ingest.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "mslln/error.hpp"
#include "mslln/format.hpp"

namespace mslln {

namespace {

using namespace std::chrono;

std::optional<int> to_int(std::string_view s) {
  int v = 0;
  s = trim(s);
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

// Splits one CSV record; double quotes group fields and "" escapes a quote.
std::vector<std::string> split_record(std::string_view line, char delim) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delim) {
      out.push_back(std::string(trim(cur)));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::string(trim(cur)));
  return out;
}

// R's read.csv turns "Adj Close" into "Adj.Close"; accept either spelling.
bool same_column(std::string_view header, std::string_view wanted) {
  if (header.size() != wanted.size()) return false;
  for (std::size_t i = 0; i < header.size(); ++i) {
    const char a = header[i] == '.' ? ' ' : header[i];
    const char b = wanted[i] == '.' ? ' ' : wanted[i];
    if (a != b) return false;
  }
  return true;
}

std::size_t find_column(const std::vector<std::string>& header, std::string_view name) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (same_column(header[i], name)) return i;
  }
  throw SchemaError("missing column '" + std::string(name) + "'");
}

char detect_delimiter(std::string_view header) {
  return header.find('\t') != std::string_view::npos ? '\t' : ',';
}

}  // namespace

std::optional<year_month_day> parse_date(std::string_view text) {
  text = trim(text);
  std::optional<int> y, m, d;
  if (text.size() >= 8 && text.find('-') != std::string_view::npos) {
    const auto parts = split(text, '-');
    if (parts.size() != 3) return std::nullopt;
    y = to_int(parts[0]);
    m = to_int(parts[1]);
    d = to_int(parts[2]);
  } else if (text.find('/') != std::string_view::npos) {
    const auto parts = split(text, '/');
    if (parts.size() != 3) return std::nullopt;
    m = to_int(parts[0]);
    d = to_int(parts[1]);
    y = to_int(parts[2]);
  } else {
    return std::nullopt;
  }
  if (!y || !m || !d) return std::nullopt;
  const year_month_day ymd{year{*y}, month{static_cast<unsigned>(*m)}, day{static_cast<unsigned>(*d)}};
  if (!ymd.ok()) return std::nullopt;
  return ymd;
}

std::string format_date(year_month_day date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()), static_cast<unsigned>(date.month()),
                static_cast<unsigned>(date.day()));
  return buf;
}

PriceSeries parse_prices(std::istream& in, std::string_view column, std::string_view date_column) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("price file is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF) line.erase(0, 3);  // UTF-8 BOM
  const char delim = detect_delimiter(line);
  const auto header = split_record(line, delim);
  const auto price_col = find_column(header, column);
  const auto date_col = find_column(header, date_column);

  PriceSeries out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto cells = split_record(line, delim);
    if (cells.size() <= std::max(price_col, date_col)) continue;
    double price = 0.0;
    if (!parse_real(cells[price_col], price) || !std::isfinite(price)) continue;
    const auto date = parse_date(cells[date_col]);
    if (!date) throw DataError("line " + std::to_string(line_no) + ": unparseable date '" + cells[date_col] + "'");
    if (!out.dates.empty() && !(out.dates.back() < *date)) {
      throw DataError("line " + std::to_string(line_no) + ": dates must be strictly increasing");
    }
    if (!(price > 0.0)) throw DataError("line " + std::to_string(line_no) + ": price must be positive");
    out.dates.push_back(*date);
    out.adj_close.push_back(price);
  }
  if (out.adj_close.empty()) throw DataError("no usable prices after cleaning");
  return out;
}

PriceSeries load_prices(const std::string& path, std::string_view column, std::string_view date_column) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open price file '" + path + "'");
  auto series = parse_prices(in, column, date_column);
  const auto slash = path.find_last_of('/');
  auto base = path.substr(slash == std::string::npos ? 0 : slash + 1);
  if (const auto dot = base.find_last_of('.'); dot != std::string::npos && dot > 0) base.resize(dot);
  series.label = base;
  return series;
}

std::string to_tsv(const PriceSeries& prices) {
  std::ostringstream out;
  out << "Date\tAdj Close\n";
  for (std::size_t i = 0; i < prices.size(); ++i) {
    out << format_date(prices.dates[i]) << '\t' << format_real(prices.adj_close[i]) << '\n';
  }
  return out.str();
}

void save_prices(const PriceSeries& prices, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path + "'");
  out << to_tsv(prices);
}

std::vector<double> log_returns(std::span<const double> prices) {
  if (prices.size() < 2) throw LengthError("log returns need at least two prices");
  for (const double p : prices) {
    if (!(p > 0.0)) throw DomainError("log returns need positive prices");
  }
  std::vector<double> r(prices.size());
  r[0] = 0.0;
  for (std::size_t t = 1; t < prices.size(); ++t) r[t] = std::log(prices[t]) - std::log(prices[t - 1]);
  return r;
}

std::vector<double> log_returns(const PriceSeries& prices) { return log_returns(prices.adj_close); }

std::vector<double> select_window(std::span<const double> series, std::int64_t end_offset, std::int64_t length) {
  if (end_offset < 0 || length < 1) throw ConfigError("window needs end_offset >= 0 and length >= 1");
  const auto len = static_cast<std::int64_t>(series.size());
  const auto first = len - end_offset - length;  // 0-based
  if (first < 0) {
    throw LengthError("series of length " + std::to_string(len) + " is too short for a " + std::to_string(length) +
                      "-point window ending " + std::to_string(end_offset) + " before the end");
  }
  return {series.begin() + first, series.begin() + first + length};
}

std::optional<IndexRange> date_range(const PriceSeries& prices, year_month_day from, year_month_day to) {
  if (prices.dates.empty() || prices.dates.front() > from || prices.dates.back() < to) return std::nullopt;
  IndexRange r;
  bool found = false;
  for (std::size_t i = 0; i < prices.dates.size(); ++i) {
    if (prices.dates[i] < from || prices.dates[i] > to) continue;
    if (!found) r.first = i;
    r.last = i;
    found = true;
  }
  if (!found) return std::nullopt;
  return r;
}

std::string to_column_csv(std::span<const double> values, std::string_view header) {
  std::ostringstream out;
  out << header << '\n';
  for (const double v : values) out << format_real(v) << '\n';
  return out.str();
}

std::vector<double> parse_column(std::istream& in, std::string_view column) {
  std::string line;
  std::size_t index = 0;
  bool header_done = false;
  char delim = ',';
  std::vector<double> out;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || trim(line).front() == '#') continue;
    if (!header_done) {
      delim = detect_delimiter(line);
      const auto header = split_record(line, delim);
      if (!column.empty()) {
        index = find_column(header, column);
      } else if (header.size() != 1) {
        throw SchemaError("multi-column file needs an explicit column name");
      }
      header_done = true;
      continue;
    }
    const auto cells = split_record(line, delim);
    double v = 0.0;
    if (index >= cells.size() || !parse_real(cells[index], v)) {
      throw DataError("line " + std::to_string(line_no) + ": not a number");
    }
    out.push_back(v);
  }
  if (!header_done) throw SchemaError("series file has no header");
  if (out.empty()) throw DataError("series file has no values");
  return out;
}

}  // namespace mslln
