// Copyright (c) 2026 The dsrace developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <dsrace/simulator.hpp>

#include "parallel.hpp"

#include <cmath>
#include <stdexcept>

namespace dsrace {

namespace {

enum class ChaseOutcome { Won, Abandoned, Capped };

// Walks the deficit from `deficit` until it hits 0 (win) or `give_up_at`.
// `blocks` is the running draw count shared with the waiting phase.
ChaseOutcome chase(SplitMix64& rng, const BernoulliThreshold& attacker_block, std::uint64_t deficit,
                   std::uint64_t give_up_at, std::uint64_t& blocks, std::uint64_t max_blocks)
{
    while (true) {
        if (blocks >= max_blocks) return ChaseOutcome::Capped;
        ++blocks;
        if (attacker_block(rng)) {
            if (--deficit == 0) return ChaseOutcome::Won;
        } else {
            if (++deficit == give_up_at) return ChaseOutcome::Abandoned;
        }
    }
}

void require_trials(std::uint64_t trials)
{
    if (trials == 0) throw std::invalid_argument("trial count must be at least 1");
}

}  // namespace

void TrialConfig::validate() const
{
    if (budget_surplus < 1) throw std::invalid_argument("budget_surplus must be at least 1");
    if (max_blocks < 1) throw std::invalid_argument("max_blocks must be at least 1");
}

void KHistogram::add(std::uint64_t k, std::uint64_t count)
{
    if (count == 0) return;
    counts_[k] += count;
    total_ += count;
}

void KHistogram::merge(const KHistogram& other)
{
    for (const auto& [k, c] : other.counts_) add(k, c);
}

std::uint64_t KHistogram::count(std::uint64_t k) const
{
    const auto it = counts_.find(k);
    return it == counts_.end() ? 0 : it->second;
}

double KHistogram::frequency(std::uint64_t k) const
{
    if (total_ == 0) return 0.0;
    return static_cast<double>(count(k)) / static_cast<double>(total_);
}

std::uint64_t KHistogram::max_k() const
{
    return counts_.empty() ? 0 : counts_.rbegin()->first;
}

double KHistogram::mean() const
{
    if (total_ == 0) return 0.0;
    long double sum = 0.0L;
    for (const auto& [k, c] : counts_) sum += static_cast<long double>(k) * static_cast<long double>(c);
    return static_cast<double>(sum / static_cast<long double>(total_));
}

double KHistogram::variance() const
{
    if (total_ < 2) return 0.0;
    const long double m = mean();
    long double ss = 0.0L;
    for (const auto& [k, c] : counts_) {
        const long double d = static_cast<long double>(k) - m;
        ss += d * d * static_cast<long double>(c);
    }
    return static_cast<double>(ss / static_cast<long double>(total_ - 1));
}

double KHistogram::mean_std_error() const
{
    if (total_ == 0) return 0.0;
    return std::sqrt(variance() / static_cast<double>(total_));
}

double SimulationResult::success_rate() const
{
    return trials == 0 ? 0.0 : static_cast<double>(wins) / static_cast<double>(trials);
}

double SimulationResult::std_error() const
{
    if (trials == 0) return 0.0;
    const double m = success_rate();
    return std::sqrt(m * (1.0 - m) / static_cast<double>(trials));
}

double EmpiricalRate::rate() const
{
    return trials == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(trials);
}

double EmpiricalRate::std_error() const
{
    if (trials == 0) return 0.0;
    const double m = rate();
    return std::sqrt(m * (1.0 - m) / static_cast<double>(trials));
}

TrialRecord simulate_trial(SplitMix64& rng, const TrialConfig& config)
{
    const BernoulliThreshold attacker_block(config.power.attacker());
    TrialRecord record;

    std::uint64_t honest = 0;
    while (honest < config.z) {
        if (record.blocks_elapsed >= config.max_blocks) {
            record.capped = true;
            return record;
        }
        ++record.blocks_elapsed;
        if (attacker_block(rng)) {
            ++record.k_during_wait;
        } else {
            ++honest;
        }
    }

    const std::uint64_t k = record.k_during_wait;
    if (k >= config.z + 1) {
        record.attacker_won = true;
        return record;
    }
    const std::uint64_t deficit = config.z + 1 - k;
    const std::uint64_t budget = config.z + config.budget_surplus - k;
    switch (chase(rng, attacker_block, deficit, deficit + budget, record.blocks_elapsed, config.max_blocks)) {
    case ChaseOutcome::Won:
        record.attacker_won = true;
        break;
    case ChaseOutcome::Capped:
        record.capped = true;
        break;
    case ChaseOutcome::Abandoned:
        break;
    }
    return record;
}

namespace {

struct TrialTally {
    std::uint64_t wins = 0;
    std::uint64_t capped = 0;
    KHistogram k_histogram;
};

}  // namespace

SimulationResult run_trials(const TrialConfig& config, std::uint64_t trials, std::uint64_t master_seed,
                            ParallelOptions parallel)
{
    config.validate();
    require_trials(trials);

    auto block = [&](std::uint64_t begin, std::uint64_t end) {
        TrialTally tally;
        for (std::uint64_t t = begin; t < end; ++t) {
            SplitMix64 rng(derive_stream_seed(master_seed, t));
            const TrialRecord record = simulate_trial(rng, config);
            tally.wins += record.attacker_won ? 1 : 0;
            tally.capped += record.capped ? 1 : 0;
            tally.k_histogram.add(record.k_during_wait);
        }
        return tally;
    };
    auto merge = [](TrialTally& into, const TrialTally& from) {
        into.wins += from.wins;
        into.capped += from.capped;
        into.k_histogram.merge(from.k_histogram);
    };
    TrialTally tally = detail::parallel_reduce<TrialTally>(trials, parallel.threads, block, merge);

    return SimulationResult{config, trials, tally.wins, std::move(tally.k_histogram), master_seed, tally.capped};
}

EmpiricalRate empirical_catch_up(const MiningPowerSplit& power, std::uint64_t deficit, std::uint64_t budget,
                                 std::uint64_t trials, std::uint64_t master_seed, ParallelOptions parallel,
                                 std::uint64_t max_blocks)
{
    require_trials(trials);
    if (deficit == 0) return EmpiricalRate{trials, trials, 0};
    if (budget == 0) throw std::invalid_argument("catch-up budget must be at least 1");

    const BernoulliThreshold attacker_block(power.attacker());
    auto block = [&](std::uint64_t begin, std::uint64_t end) {
        EmpiricalRate partial;
        for (std::uint64_t t = begin; t < end; ++t) {
            SplitMix64 rng(derive_stream_seed(master_seed, t));
            std::uint64_t blocks = 0;
            switch (chase(rng, attacker_block, deficit, deficit + budget, blocks, max_blocks)) {
            case ChaseOutcome::Won:
                ++partial.successes;
                break;
            case ChaseOutcome::Capped:
                ++partial.capped;
                break;
            case ChaseOutcome::Abandoned:
                break;
            }
            ++partial.trials;
        }
        return partial;
    };
    auto merge = [](EmpiricalRate& into, const EmpiricalRate& from) {
        into.successes += from.successes;
        into.trials += from.trials;
        into.capped += from.capped;
    };
    return detail::parallel_reduce<EmpiricalRate>(trials, parallel.threads, block, merge);
}

KHistogram empirical_k_distribution(const MiningPowerSplit& power, std::uint64_t z, std::uint64_t trials,
                                    std::uint64_t master_seed, ParallelOptions parallel)
{
    require_trials(trials);
    if (z == 0) throw std::invalid_argument("k distribution needs z >= 1");

    const BernoulliThreshold attacker_block(power.attacker());
    auto block = [&](std::uint64_t begin, std::uint64_t end) {
        KHistogram partial;
        for (std::uint64_t t = begin; t < end; ++t) {
            SplitMix64 rng(derive_stream_seed(master_seed, t));
            std::uint64_t k = 0;
            std::uint64_t honest = 0;
            while (honest < z) {
                if (attacker_block(rng)) {
                    ++k;
                } else {
                    ++honest;
                }
            }
            partial.add(k);
        }
        return partial;
    };
    auto merge = [](KHistogram& into, const KHistogram& from) { into.merge(from); };
    return detail::parallel_reduce<KHistogram>(trials, parallel.threads, block, merge);
}

}  // namespace dsrace
