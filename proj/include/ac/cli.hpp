#pragma once

#include <iosfwd>

namespace ac {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitExhausted = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitGuard = 70;

// Environment variable overriding the search memory cap, in MiB.
inline constexpr const char* kMemoryLimitEnv = "AC_MEMORY_LIMIT_MB";

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ac
