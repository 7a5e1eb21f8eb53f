#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace topaction {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailure = 1;
inline constexpr int kExitInputError = 2;

/// Runs one command line (without the program name), writing the report to
/// `out` and diagnostics to `err`. Returns the process exit status.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace topaction
