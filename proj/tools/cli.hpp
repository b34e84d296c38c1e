#pragma once

#include <iosfwd>

namespace xmap::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kOverflowOrBudget = 2,
  kNovelCycle = 3,
  kViolation = 4,
};

// Environment variable naming the default cache file.
inline constexpr const char* kCacheEnv = "XMAP_CACHE";

// Entry point behind the xmap binary. Normal output goes to `out`; errors
// go to `err` as a single "error: <kind>: <reason>" line.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace xmap::cli
