#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace susyqm::cli {

/// Exit statuses of run().
enum ExitCode : int { kOk = 0, kInvalid = 1, kParse = 2, kCrossCheck = 3 };

/// Executes one command line (without the program name) and returns its exit
/// status. Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace susyqm::cli
