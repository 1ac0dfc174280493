#include "manifest.hpp"

#include <chrono>
#include <ctime>
#include <fstream>

#include "cli.hpp"
#include "mslln/error.hpp"

namespace mslln::cli {

namespace fs = std::filesystem;

std::string manifest_comment(std::string_view relative) {
  return "# manifest=" + std::string(relative) + "\n";
}

std::string tool_version() { return MSLLN_VERSION; }

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

nlohmann::json RunManifest::to_json() const {
  return {
      {"tool", "mslln"},
      {"version", version},
      {"command", command},
      {"argv", argv},
      {"config", config},
      {"seeds", seeds},
      {"outputs", outputs},
      {"started_utc", started_utc},
      {"finished_utc", finished_utc},
  };
}

RunManifest RunManifest::from_json(const nlohmann::json& j) {
  RunManifest m;
  try {
    m.command = j.at("command").get<std::string>();
    m.argv = j.at("argv").get<std::vector<std::string>>();
    m.config = j.value("config", nlohmann::json::object());
    m.seeds = j.value("seeds", std::vector<std::uint64_t>{});
    m.outputs = j.value("outputs", std::vector<std::string>{});
    m.version = j.value("version", "");
    m.started_utc = j.value("started_utc", "");
    m.finished_utc = j.value("finished_utc", "");
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed manifest: ") + e.what());
  }
  return m;
}

RunManifest RunManifest::load(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open manifest " + path.string());
  try {
    return from_json(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("manifest is not JSON: ") + e.what());
  }
}

OutputDir::OutputDir(fs::path root) : root_(std::move(root)) {
  std::error_code ec;
  fs::create_directories(root_, ec);
  if (ec || !fs::is_directory(root_)) {
    throw UsageError("cannot create output directory " + root_.string());
  }
}

fs::path OutputDir::prepare(const std::string& relative) {
  const auto path = root_ / relative;
  std::error_code ec;
  fs::create_directories(path.parent_path(), ec);
  if (ec) throw UsageError("cannot create " + path.parent_path().string());
  written_.push_back(relative);
  return path;
}

void OutputDir::write_text(const std::string& relative, std::string_view content) {
  const auto path = prepare(relative);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw UsageError("cannot write " + path.string());
}

void OutputDir::write_bytes(const std::string& relative, std::span<const unsigned char> content) {
  const auto path = prepare(relative);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(content.data()), static_cast<std::streamsize>(content.size()));
  if (!out) throw UsageError("cannot write " + path.string());
}

void OutputDir::write_manifest(RunManifest manifest) {
  manifest.outputs = written_;
  manifest.finished_utc = utc_now();
  write_text(std::string(kManifestName), manifest.to_json().dump(2) + "\n");
}

}  // namespace mslln::cli
