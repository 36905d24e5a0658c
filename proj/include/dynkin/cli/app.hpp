#pragma once

#include <iosfwd>

namespace dynkin::cli {

// Exit codes.
enum ExitCode : int {
  kOk = 0,
  kIoError = 1,
  kValidation = 2,
  kOverflow = 3,
  kVerifyFailed = 4,
  kOracleGap = 5,
  kSimulationDiscrepancy = 6,
};

// Entry point of the dynkin command line tool.
int run_app(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace dynkin::cli
