#pragma once

#include <ostream>

namespace spinrelay {

/// Exit codes: 0 success, 1 physics failure fatal to the command, 2 usage error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitPhysics = 1;
inline constexpr int kExitUsage = 2;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace spinrelay
