// Copyright (c) 2026 The dsrace developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "cli/commands.hpp"

#include <cstdlib>
#include <iostream>

int main(int argc, char** argv)
{
    const auto seed = dsrace::cli::seed_from_env(std::getenv(dsrace::cli::kSeedEnvVar));
    if (!seed) {
        std::cerr << "dsrace: error: " << dsrace::cli::kSeedEnvVar << " must be a non-negative integer\n";
        return dsrace::cli::kExitUsage;
    }
    std::vector<std::string> args(argv + 1, argv + argc);
    return dsrace::cli::run_cli(args, std::cout, std::cerr, *seed);
}
