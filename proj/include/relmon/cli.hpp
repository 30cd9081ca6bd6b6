#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace relmon {

enum class ExitStatus : int {
    Pass = 0,
    Negative = 1,     // verdict negative or a property fails
    Inconclusive = 2, // nothing found within the bound
    InputError = 3,
    Budget = 4,
};

std::string to_string(ExitStatus s);

/// Entry point of the `relmon` binary. args excludes the program name.
/// Human output goes to `out`, diagnostics to `err`; `--report FILE` also writes
/// the JSON report, which is produced on every exit path.
ExitStatus run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace relmon
