#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace polyg {

/// Command-line frontend: eval, check, bounds, compile-tm, export.
/// Exit codes: 0 success (all checks pass), 1 diagnostics or failed checks,
/// 2 fuel or budget exhaustion.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

inline constexpr int kExitOk = 0;
inline constexpr int kExitDiagnostics = 1;
inline constexpr int kExitExhausted = 2;

}  // namespace polyg
