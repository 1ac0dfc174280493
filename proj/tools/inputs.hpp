#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mslln/ingest.hpp"

namespace mslln::cli {

/// How the analysed stretch is cut from a price file's log returns.
enum class WindowMode {
  automatic,  ///< reference dates when covered, index offsets otherwise
  dates,      ///< returns dated within the reference trading-date range
  offsets,    ///< indices (len-2700)..(len-100)
  full,       ///< every return
};

WindowMode parse_window_mode(std::string_view text);

enum class InputKind { prices, ensemble, column };
std::string_view to_string(InputKind kind);

struct SeriesInput {
  std::string path;
  std::string label;
  InputKind kind = InputKind::column;
  std::vector<double> values;
  std::string window;  ///< how `values` was selected
  std::optional<PriceSeries> prices;
};

/// Reads a Yahoo-style price CSV, an ensemble TSV (column `d` unless
/// `column` says otherwise) or a headed one-column series.
SeriesInput load_series(const std::string& path, std::string_view column, std::string_view label,
                        WindowMode mode);

std::string read_file(const std::string& path);

}  // namespace mslln::cli
