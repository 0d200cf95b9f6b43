#pragma once

#include <iosfwd>

namespace subprod::cli {

// Exit codes.
inline constexpr int kPass = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kInputError = 2;
inline constexpr int kNumericalError = 3;
inline constexpr int kDisagreement = 4;

// Parses argv, runs one subcommand and prints its JSON report to `out`.
// Errors go to `err` as {"error": ...}.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace subprod::cli
