#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pcert {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailed = 1;
inline constexpr int kExitInapplicable = 2;

/// Runs one subcommand. `args` excludes the program name. Reports go to
/// `out`, diagnostics to `err`. Exit codes: 0 all proved or success,
/// 1 counterexample or failed check, 2 inapplicable or input error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pcert
