#pragma once

#include <iosfwd>

namespace freeplate::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitInputError = 2;

/// Entry point of the `freeplate` command line tool. Subcommands: tone,
/// sweep, verify, quotient. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace freeplate::cli
