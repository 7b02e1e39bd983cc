// cli.hpp
// Front end for the `pstwalk` executable. Kept in a library so tests can drive
// it without spawning processes.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pstwalk::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

/// args[0] is the program name. Results go to `out` unless --out is given;
/// diagnostics and progress go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "a:b" (inclusive) or a single value "a". Throws ConfigError.
std::vector<std::size_t> parse_range(const std::string& text);

}  // namespace pstwalk::cli
