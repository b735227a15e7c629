// Copyright (c) 2026 The dsrace developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef DSRACE_CLI_COMMANDS_HPP
#define DSRACE_CLI_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace dsrace::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitUsage = 2;

inline constexpr std::uint64_t kDefaultSeed = 42;
inline constexpr const char* kSeedEnvVar = "DSRACE_SEED";

/// Parses the value of kSeedEnvVar. nullptr gives kDefaultSeed; anything but
/// a plain decimal uint64 gives nullopt.
std::optional<std::uint64_t> seed_from_env(const char* value);

/// Runs one invocation. `args` excludes the program name. Tables go to `out`
/// unless --out names a file; diagnostics go to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            std::uint64_t default_seed = kDefaultSeed);

}  // namespace dsrace::cli

#endif  // DSRACE_CLI_COMMANDS_HPP
