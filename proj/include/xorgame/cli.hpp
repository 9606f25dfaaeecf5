#pragma once

#include <iosfwd>

namespace xorgame {

/// Exit codes of the xorgame command line.
enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitFileOrParse = 2,
  kExitValidation = 3,
  kExitSolver = 4,
  kExitMismatch = 5,
};

/// Entry point of `xorgame <gen|value|verify|simulate|strategy> ...`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace xorgame
