#pragma once
// tcmine subcommands: mine, detect, gen-fixture, stats.

#include <iosfwd>
#include <string>
#include <vector>

namespace tcm::cli {

enum ExitCode : int { kOk = 0, kUsageError = 1, kIoError = 2 };

// `args` excludes the program name. Reports go to `out`, progress and
// diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tcm::cli
