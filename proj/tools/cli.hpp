#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace multex::cli {

inline constexpr const char* schema = "multex/1";

enum ExitCode : int {
    ok = 0,
    suite_failed = 1,
    invalid_parameters = 2,
};

/// Parses `args` (without the program name), runs one subcommand and writes
/// the report to `out`; diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses q literally or in the form a*K+C (also K*a+C, a*K, a) given a.
/// Throws InvalidParameter when the form needs a value of a that is missing.
unsigned long long parse_q(const std::string& text, const unsigned long long* a);

} // namespace multex::cli
