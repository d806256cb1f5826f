#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tiledag::cli {

// Exit statuses of run().
inline constexpr int kOk = 0;
inline constexpr int kContractError = 1;
inline constexpr int kUsage = 2;
inline constexpr int kCheckFailed = 3;  // --check mismatch, or an infeasible ip-check

// Runs one subcommand. CSV goes to `out` unless --out names a file;
// diagnostics go to `err`. TILEDAG_OUT_DIR, when set, is the directory
// that relative output paths are resolved against.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// "3", "1..10", "1,2,5" and combinations such as "1..4,8".
std::vector<int> parse_int_list(const std::string& s);

}  // namespace tiledag::cli
