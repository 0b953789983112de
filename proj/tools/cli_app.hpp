#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace radlehmer::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,
    kExitUsage = 2,
    kExitResource = 3,
};

/// Runs one CLI invocation. `args` excludes the program name. Data goes to
/// `out`, progress and errors to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "1e7", "10000000" or "2.5e3" into an exact integer. Throws
/// std::invalid_argument when the value is not a non-negative integer below
/// 2^64.
std::uint64_t parse_count(const std::string& text);

} // namespace radlehmer::cli
