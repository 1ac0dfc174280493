#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace mslln {

/// Keys of one `[section]` of a key = value document.
class KeyValueSection {
 public:
  explicit KeyValueSection(std::string name = {}) : name_(std::move(name)) {}

  bool has(std::string_view key) const;
  const std::string& get(std::string_view key) const;
  std::string get_or(std::string_view key, std::string_view fallback) const;
  double get_real(std::string_view key) const;
  std::int64_t get_int(std::string_view key) const;
  std::vector<double> get_real_list(std::string_view key) const;

  void set(std::string key, std::string value);
  /// Throws ConfigError naming the first key not in `allowed`.
  void reject_unknown(std::initializer_list<std::string_view> allowed) const;

  const std::string& name() const { return name_; }
  const std::map<std::string, std::string, std::less<>>& entries() const { return entries_; }

 private:
  std::string name_;
  std::map<std::string, std::string, std::less<>> entries_;
};

/// INI-style document: `# comments`, `[section]` headers, `key = value` lines.
/// Keys before the first header land in the unnamed section "".
class KeyValueDocument {
 public:
  static KeyValueDocument parse(std::string_view text);
  static KeyValueDocument load(const std::string& path);

  bool has_section(std::string_view name) const;
  /// Missing sections read as empty.
  const KeyValueSection& section(std::string_view name) const;
  KeyValueSection& section_mut(const std::string& name);

  std::string to_string() const;

 private:
  std::map<std::string, KeyValueSection, std::less<>> sections_;
};

}  // namespace mslln
