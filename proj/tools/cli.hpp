#pragma once

#include <iosfwd>

namespace fhmdp::cli {

// Exit statuses.
inline constexpr int kSuccess = 0;
inline constexpr int kMismatch = 1;
inline constexpr int kUsageError = 2;

// Entry point for the fhmdp tool. Reports go to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fhmdp::cli
