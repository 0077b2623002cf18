#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hspec::cli {

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kPrecondition = 2,
    kResource = 3,
    kInconclusive = 4,
};

/// Runs one subcommand; `args` excludes the program name. Results go to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hspec::cli
