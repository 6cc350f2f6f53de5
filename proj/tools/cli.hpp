#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "xmap/error.hpp"

namespace xmap::cli {

enum ExitCode : int {
  kOk = 0,
  kDomainError = 1,
  kParseOrIoError = 2,
  kUsageError = 3,
};

/// Exit code for a library error: parse and I/O failures are 2, everything
/// else (validation, transformation) is 1.
int exit_code_for(ErrorKind kind);

/// Runs one command. `args` excludes the program name. Results go to `out`
/// (or the --out file), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace xmap::cli
