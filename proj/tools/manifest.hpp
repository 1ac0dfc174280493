#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace mslln::cli {

inline constexpr std::string_view kManifestName = "manifest.json";

/// Comment line placed at the top of every tabular output.
std::string manifest_comment(std::string_view relative = kManifestName);

std::string tool_version();
std::string utc_now();

/// Everything needed to repeat a run: rerunning `argv` reproduces every
/// output except this file byte for byte.
struct RunManifest {
  std::string command;
  std::vector<std::string> argv;
  nlohmann::json config = nlohmann::json::object();
  std::vector<std::uint64_t> seeds;
  std::vector<std::string> outputs;
  std::string version = tool_version();
  std::string started_utc = utc_now();
  std::string finished_utc;

  nlohmann::json to_json() const;
  static RunManifest from_json(const nlohmann::json& j);
  static RunManifest load(const std::filesystem::path& path);
};

/// Output directory that records every file written through it.
class OutputDir {
 public:
  /// Creates the directory; throws UsageError if it cannot be created.
  explicit OutputDir(std::filesystem::path root);

  void write_text(const std::string& relative, std::string_view content);
  void write_bytes(const std::string& relative, std::span<const unsigned char> content);
  void write_manifest(RunManifest manifest);

  const std::filesystem::path& root() const { return root_; }
  const std::vector<std::string>& written() const { return written_; }

 private:
  std::filesystem::path prepare(const std::string& relative);

  std::filesystem::path root_;
  std::vector<std::string> written_;
};

}  // namespace mslln::cli
