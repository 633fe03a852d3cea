#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace adtcheck::cli {

enum ExitCode : int { kClean = 0, kViolations = 1, kError = 2 };

/// Entry point of `adtcheck`. `args` excludes the program name. Reports go
/// to `out`, diagnostics to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace adtcheck::cli
