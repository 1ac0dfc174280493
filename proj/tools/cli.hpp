#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "mslln/error.hpp"

namespace mslln::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 2,
  kExitData = 3,
  kExitVerification = 4,
};

/// Bad flags, bad config values, unwritable output locations.
class UsageError : public Error {
 public:
  using Error::Error;
};

/// Runs the tool with args[0] as the program name and returns the exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace mslln::cli
