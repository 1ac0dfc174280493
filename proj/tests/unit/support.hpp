#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mslln/rng.hpp"

namespace test_support {

/// Small deterministic generator for property tests.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(mslln::derive_stream(0x5EED, seed)) {}
  double uniform(double lo, double hi) { return lo + (hi - lo) * rng_.uniform(); }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng_.next() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  double normal() { return rng_.normal(); }
  std::vector<double> normals(std::size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = rng_.normal();
    return v;
  }

 private:
  mslln::CounterRng rng_;
};

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(MSLLN_FIXTURE_DIR) / name;
}

inline std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("mslln_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace test_support
