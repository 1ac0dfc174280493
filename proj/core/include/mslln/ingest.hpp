#pragma once

#include <chrono>
#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mslln {

struct PriceSeries {
  std::vector<std::chrono::year_month_day> dates;
  std::vector<double> adj_close;
  std::string label;

  std::size_t size() const { return adj_close.size(); }
};

/// ISO "2009-10-23" or US "10/23/2009".
std::optional<std::chrono::year_month_day> parse_date(std::string_view text);
std::string format_date(std::chrono::year_month_day date);

/// Reads a delimited price file (comma or tab, detected from the header).
/// Rows whose price is missing or not numeric ("null", "NA", "") are
/// dropped, as R's as.numeric + !is.na does; row order is preserved.
PriceSeries parse_prices(std::istream& in, std::string_view column = "Adj Close",
                         std::string_view date_column = "Date");
PriceSeries load_prices(const std::string& path, std::string_view column = "Adj Close",
                        std::string_view date_column = "Date");

/// Cleaned series as "Date<TAB>Adj Close" with round-trip precision.
std::string to_tsv(const PriceSeries& prices);
void save_prices(const PriceSeries& prices, const std::string& path);

/// r_1 = 0, r_t = ln S_t - ln S_{t-1}.
std::vector<double> log_returns(const PriceSeries& prices);
std::vector<double> log_returns(std::span<const double> prices);

/// Indices (len - end_offset - length + 1) .. (len - end_offset), 1-based
/// inclusive; the defaults give the R slice (len-2700):(len-100).
std::vector<double> select_window(std::span<const double> series, std::int64_t end_offset = 100,
                                  std::int64_t length = 2601);

struct IndexRange {
  std::size_t first = 0;  ///< 0-based, inclusive
  std::size_t last = 0;   ///< 0-based, inclusive
  std::size_t size() const { return last - first + 1; }
};

/// Rows whose date falls in [from, to]; nullopt when the series does not
/// cover both ends of the range.
std::optional<IndexRange> date_range(const PriceSeries& prices, std::chrono::year_month_day from,
                                     std::chrono::year_month_day to);

/// Trading-date window of the reference study.
inline constexpr std::chrono::year_month_day kReferenceFrom{std::chrono::year{2009}, std::chrono::month{10},
                                                             std::chrono::day{23}};
inline constexpr std::chrono::year_month_day kReferenceTo{std::chrono::year{2020}, std::chrono::month{2},
                                                           std::chrono::day{25}};

/// One value per line with a header, e.g. "logreturn".
std::string to_column_csv(std::span<const double> values, std::string_view header = "value");
/// Reads a headed single-column numeric file.
std::vector<double> parse_column(std::istream& in, std::string_view column = {});

}  // namespace mslln
