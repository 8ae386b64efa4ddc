#pragma once

#include <ostream>

namespace cik::cli {

// Exit statuses.
inline constexpr int kOk = 0;
inline constexpr int kPropertyFails = 1;
inline constexpr int kInputError = 2;
inline constexpr int kInternalError = 3;

/// Whole command line in, status out. Never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cik::cli
