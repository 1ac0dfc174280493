#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "commands.hpp"

namespace mslln::cli {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  std::string evidence;  ///< TSV body backing the verdict
};

struct VerifyOptions {
  std::string suite = "all";
  std::uint64_t seed = 1;
  int jobs = 1;
  std::int64_t radius = 1'000'000;
  int reps = 0;  ///< 0 keeps each check's own replicate count
  std::string out;
};

std::vector<CheckResult> kernel_suite(const VerifyOptions& opt);
std::vector<CheckResult> mslln_suite(const VerifyOptions& opt);
std::vector<CheckResult> tensor_suite(const VerifyOptions& opt);

int run_verify(const VerifyOptions& opt, Context& ctx);

}  // namespace mslln::cli
