// Copyright (c) 2026 The dsrace developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <dsrace/analytic.hpp>

#include <benchmark/benchmark.h>

namespace {

void BM_AttackSuccess(benchmark::State& state)
{
    const auto variant = static_cast<dsrace::FormulaVariant>(state.range(1));
    const dsrace::AttackQuery query{dsrace::MiningPowerSplit(0.3), static_cast<std::uint64_t>(state.range(0)), variant};
    for (auto _ : state) benchmark::DoNotOptimize(dsrace::attack_success(query));
}
BENCHMARK(BM_AttackSuccess)->ArgsProduct({{6, 24, 120}, {0, 1, 2}});

void BM_MinConfirmations(benchmark::State& state)
{
    const dsrace::MiningPowerSplit power(static_cast<double>(state.range(0)) / 100.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(dsrace::min_confirmations(power, 0.001, dsrace::FormulaVariant::Corrected));
    }
}
BENCHMARK(BM_MinConfirmations)->Arg(10)->Arg(30)->Arg(44);

void BM_RuinWinProbability(benchmark::State& state)
{
    const dsrace::RuinGameSpec game{40, 80, 0.45};
    for (auto _ : state) benchmark::DoNotOptimize(dsrace::ruin_win_probability(game));
}
BENCHMARK(BM_RuinWinProbability);

}  // namespace
