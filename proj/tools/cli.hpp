#pragma once

#include <string>
#include <vector>

namespace hsdp::cli {

// Exit codes: 0 success, 1 verification or delivery failure, 2 infeasible or
// malformed parameters, 3 I/O problems.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitBadParams = 2;
inline constexpr int kExitIo = 3;

/// Runs one invocation; `args` excludes the program name.
int run(std::vector<std::string> args);

}  // namespace hsdp::cli
