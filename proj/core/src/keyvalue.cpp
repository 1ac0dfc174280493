#include "mslln/keyvalue.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "mslln/error.hpp"
#include "mslln/format.hpp"

namespace mslln {

bool KeyValueSection::has(std::string_view key) const { return entries_.find(key) != entries_.end(); }

const std::string& KeyValueSection::get(std::string_view key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) {
    throw ConfigError("missing key '" + std::string(key) + "' in section [" + name_ + "]");
  }
  return it->second;
}

std::string KeyValueSection::get_or(std::string_view key, std::string_view fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? std::string(fallback) : it->second;
}

double KeyValueSection::get_real(std::string_view key) const {
  double v = 0.0;
  if (!parse_real(get(key), v)) {
    throw ConfigError("key '" + std::string(key) + "' is not a number: '" + get(key) + "'");
  }
  return v;
}

std::int64_t KeyValueSection::get_int(std::string_view key) const {
  const auto text = trim(get(key));
  std::int64_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw ConfigError("key '" + std::string(key) + "' is not an integer: '" + get(key) + "'");
  }
  return v;
}

std::vector<double> KeyValueSection::get_real_list(std::string_view key) const {
  return parse_real_list(get(key));
}

void KeyValueSection::set(std::string key, std::string value) { entries_[std::move(key)] = std::move(value); }

void KeyValueSection::reject_unknown(std::initializer_list<std::string_view> allowed) const {
  for (const auto& [key, value] : entries_) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown key '" + key + "' in section [" + name_ + "]");
    }
  }
}

KeyValueDocument KeyValueDocument::parse(std::string_view text) {
  KeyValueDocument doc;
  std::string current;
  doc.sections_.emplace("", KeyValueSection(""));
  std::size_t line_no = 0;
  for (auto raw : split(text, '\n')) {
    ++line_no;
    auto line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(line_no) + ": unterminated section");
      current = std::string(trim(line.substr(1, line.size() - 2)));
      doc.sections_.try_emplace(current, KeyValueSection(current));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    auto key = std::string(trim(line.substr(0, eq)));
    auto value = std::string(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    doc.sections_.at(current).set(std::move(key), std::move(value));
  }
  return doc;
}

KeyValueDocument KeyValueDocument::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

bool KeyValueDocument::has_section(std::string_view name) const {
  return sections_.find(name) != sections_.end();
}

const KeyValueSection& KeyValueDocument::section(std::string_view name) const {
  static const KeyValueSection empty;
  const auto it = sections_.find(name);
  return it == sections_.end() ? empty : it->second;
}

KeyValueSection& KeyValueDocument::section_mut(const std::string& name) {
  return sections_.try_emplace(name, KeyValueSection(name)).first->second;
}

std::string KeyValueDocument::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [name, section] : sections_) {
    if (section.entries().empty()) continue;
    if (!first) out << '\n';
    first = false;
    if (!name.empty()) out << '[' << name << "]\n";
    for (const auto& [key, value] : section.entries()) out << key << " = " << value << '\n';
  }
  return out.str();
}

}  // namespace mslln
