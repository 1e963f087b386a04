#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "slowfast/error.hpp"

namespace slowfast::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitModel = 3,
    kExitNumeric = 4,
};

/// Bad command-line input detected after parsing (e.g. zero iterations).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

int exit_code_for(ErrorKind kind) noexcept;

/// Entry point of the `slowfast` tool. Subcommands: run, table, chirp,
/// codim-series. Normal output goes to `out`, diagnostics and timings to
/// `err`; the return value is the process exit status.
int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace slowfast::cli
