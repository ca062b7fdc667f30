#pragma once

#include <string>

#include "dd/config.hpp"

namespace dd {

// Exit codes: 0 all verdicts PASS (or run completed for non-verifying
// commands), 2 any FAIL, 3 inconclusive-only, 1 runtime errors, 64 usage and
// malformed configuration.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitFail = 2;
inline constexpr int kExitInconclusive = 3;
inline constexpr int kExitUsage = 64;

int run_command(const std::string& command, const RunConfig& config, const std::string& out_dir);

}  // namespace dd
