#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mslln {

enum class Outcome { converges, diverges };

inline char to_char(Outcome o) { return o == Outcome::converges ? 'C' : 'D'; }

/// Result of the trailing-average rule on one f(n) trace.
struct Verdict {
  Outcome outcome = Outcome::diverges;
  double mean_whole = 0.0;
  double mean_half = 0.0;
  double mean_quarter = 0.0;
  /// (mean_whole / mean_half, mean_half / mean_quarter)
  std::pair<double, double> ratios{0.0, 0.0};
};

/// C/D outcomes over (s, exponent) for one series. Row i belongs to
/// s_list[i], column j to exponents[j] (the exponent is 1/p).
struct VerdictTable {
  std::string label;
  std::vector<int> s_list;
  std::vector<double> exponents;
  std::vector<std::vector<Outcome>> outcomes;
  /// Present when the table came from data rather than a file or a model.
  std::vector<std::vector<std::optional<Verdict>>> details;

  Outcome at(std::size_t row, std::size_t col) const { return outcomes[row][col]; }
  std::string row_string(std::size_t row) const;  ///< e.g. "DDDDCC"
  void check_shape() const;
};

/// TSV in the layout `series  s  <e_1> ... <e_k>` with one C/D row per s.
/// Several tables may share one file when their exponent grids agree.
std::string to_tsv(std::span<const VerdictTable> tables);
std::vector<VerdictTable> tables_from_tsv(std::string_view text);
/// True when the first non-comment line is a verdict-table header.
bool looks_like_table_tsv(std::string_view text);

/// JSON with per-cell means and ratios when available.
std::string to_json(std::span<const VerdictTable> tables);

}  // namespace mslln
