// Copyright (c) 2026 The dsrace developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <dsrace/simulator.hpp>

#include <benchmark/benchmark.h>

namespace {

void BM_RunTrials(benchmark::State& state)
{
    const dsrace::TrialConfig config{dsrace::MiningPowerSplit(0.3), static_cast<std::uint64_t>(state.range(0))};
    const auto threads = static_cast<unsigned>(state.range(1));
    constexpr std::uint64_t trials = 100'000;
    for (auto _ : state) benchmark::DoNotOptimize(dsrace::run_trials(config, trials, 42, {threads}));
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * trials));
}
BENCHMARK(BM_RunTrials)->ArgsProduct({{3, 12}, {1, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_SimulateTrial(benchmark::State& state)
{
    const dsrace::TrialConfig config{dsrace::MiningPowerSplit(0.3), 6};
    dsrace::SplitMix64 rng(7);
    for (auto _ : state) benchmark::DoNotOptimize(dsrace::simulate_trial(rng, config));
}
BENCHMARK(BM_SimulateTrial);

}  // namespace
