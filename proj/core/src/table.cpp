#include "mslln/table.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include <json.hpp>

#include "mslln/error.hpp"
#include "mslln/format.hpp"

namespace mslln {

std::string VerdictTable::row_string(std::size_t row) const {
  std::string out;
  for (const auto o : outcomes.at(row)) out += to_char(o);
  return out;
}

void VerdictTable::check_shape() const {
  if (outcomes.size() != s_list.size()) throw DataError("verdict table row count differs from s list");
  for (const auto& row : outcomes) {
    if (row.size() != exponents.size()) throw DataError("verdict table row width differs from exponent grid");
  }
}

std::string to_tsv(std::span<const VerdictTable> tables) {
  std::ostringstream out;
  if (tables.empty()) return {};
  out << "series\ts";
  for (const double e : tables.front().exponents) out << '\t' << format_real(e);
  out << '\n';
  for (const auto& t : tables) {
    t.check_shape();
    if (t.exponents != tables.front().exponents) throw DataError("tables in one TSV must share the exponent grid");
    for (std::size_t i = 0; i < t.s_list.size(); ++i) {
      out << t.label << '\t' << t.s_list[i];
      for (const auto o : t.outcomes[i]) out << '\t' << to_char(o);
      out << '\n';
    }
  }
  return out.str();
}

namespace {

bool is_comment_or_blank(std::string_view line) {
  line = trim(line);
  return line.empty() || line.front() == '#';
}

}  // namespace

bool looks_like_table_tsv(std::string_view text) {
  for (auto line : split(text, '\n')) {
    if (is_comment_or_blank(line)) continue;
    const auto cells = split(trim(line), '\t');
    return cells.size() >= 3 && trim(cells[0]) == "series" && trim(cells[1]) == "s";
  }
  return false;
}

std::vector<VerdictTable> tables_from_tsv(std::string_view text) {
  std::vector<VerdictTable> tables;
  std::vector<double> exponents;
  bool header_seen = false;
  std::map<std::string, std::size_t> index;
  std::size_t line_no = 0;
  for (auto raw : split(text, '\n')) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (is_comment_or_blank(raw)) continue;
    const auto cells = split(raw, '\t');
    if (!header_seen) {
      if (cells.size() < 3 || trim(cells[0]) != "series" || trim(cells[1]) != "s") {
        throw SchemaError("verdict table header must start with 'series<TAB>s'");
      }
      for (std::size_t i = 2; i < cells.size(); ++i) {
        double e = 0.0;
        if (!parse_real(cells[i], e)) throw SchemaError("bad exponent in header: '" + std::string(cells[i]) + "'");
        exponents.push_back(e);
      }
      header_seen = true;
      continue;
    }
    if (cells.size() != exponents.size() + 2) {
      throw DataError("line " + std::to_string(line_no) + ": expected " + std::to_string(exponents.size() + 2) +
                      " cells");
    }
    const std::string label(trim(cells[0]));
    auto [it, inserted] = index.try_emplace(label, tables.size());
    if (inserted) {
      VerdictTable t;
      t.label = label;
      t.exponents = exponents;
      tables.push_back(std::move(t));
    }
    auto& t = tables[it->second];
    t.s_list.push_back(parse_int_list(cells[1]).at(0));
    std::vector<Outcome> row;
    for (std::size_t i = 2; i < cells.size(); ++i) {
      const auto c = trim(cells[i]);
      if (c == "C") {
        row.push_back(Outcome::converges);
      } else if (c == "D") {
        row.push_back(Outcome::diverges);
      } else {
        throw DataError("line " + std::to_string(line_no) + ": cell must be C or D, got '" + std::string(c) + "'");
      }
    }
    t.outcomes.push_back(std::move(row));
  }
  if (!header_seen) throw SchemaError("verdict table is empty");
  for (auto& t : tables) t.details.assign(t.outcomes.size(), std::vector<std::optional<Verdict>>(exponents.size()));
  return tables;
}

std::string to_json(std::span<const VerdictTable> tables) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& t : tables) {
    t.check_shape();
    nlohmann::json jt;
    jt["series"] = t.label;
    jt["s"] = t.s_list;
    jt["exponents"] = t.exponents;
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < t.s_list.size(); ++i) {
      nlohmann::json cells = nlohmann::json::array();
      for (std::size_t j = 0; j < t.exponents.size(); ++j) {
        nlohmann::json c;
        c["exponent"] = t.exponents[j];
        c["outcome"] = std::string(1, to_char(t.outcomes[i][j]));
        if (i < t.details.size() && j < t.details[i].size() && t.details[i][j]) {
          const auto& v = *t.details[i][j];
          c["mean_whole"] = v.mean_whole;
          c["mean_half"] = v.mean_half;
          c["mean_quarter"] = v.mean_quarter;
          c["ratio_whole_half"] = std::isfinite(v.ratios.first) ? nlohmann::json(v.ratios.first) : nlohmann::json(nullptr);
          c["ratio_half_quarter"] = std::isfinite(v.ratios.second) ? nlohmann::json(v.ratios.second) : nlohmann::json(nullptr);
        }
        cells.push_back(c);
      }
      rows.push_back({{"s", t.s_list[i]}, {"row", t.row_string(i)}, {"cells", cells}});
    }
    jt["rows"] = rows;
    out.push_back(jt);
  }
  return out.dump(2) + "\n";
}

}  // namespace mslln
