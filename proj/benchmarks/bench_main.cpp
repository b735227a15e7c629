// Copyright (c) 2026 The dsrace developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <benchmark/benchmark.h>

BENCHMARK_MAIN();
