#pragma once

#include <iosfwd>

namespace qca::cli {

// Exit codes: 0 success, 1 validation failure or runtime error, 2 usage error.
inline constexpr int kSuccess = 0;
inline constexpr int kValidationFailure = 1;
inline constexpr int kUsageError = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qca::cli
