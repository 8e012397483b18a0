#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gabriel::cli {

/// Exit codes: 0 no failed check, 1 some check failed, 2 parse error, 3 computation error.
inline constexpr int kOk = 0;
inline constexpr int kFailed = 1;
inline constexpr int kParseError = 2;
inline constexpr int kComputationError = 3;

/// Runs one subcommand; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gabriel::cli
