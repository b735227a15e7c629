// Copyright (c) 2026 The dsrace developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef DSRACE_SIMULATOR_HPP
#define DSRACE_SIMULATOR_HPP

#include <dsrace/probability.hpp>
#include <dsrace/rng.hpp>

#include <cstdint>
#include <map>

// Monte Carlo double-spend race. A trial never consults the closed-form
// model: it only flips Bernoulli(q) coins, one per block.
//
// Phase 1 (merchant waits): draw blocks until the honest chain has z blocks;
//   k counts attacker blocks mined meanwhile.
// Phase 2 (chase): the attacker must get strictly ahead, so the starting
//   deficit is d0 = z + 1 - k. d0 <= 0 is an immediate win. Otherwise each
//   attacker block decrements d and each honest block increments it; d == 0
//   wins and d == d0 + (z + budget_surplus - k) abandons the attack.
namespace dsrace {

inline constexpr std::uint64_t kDefaultMaxBlocks = 1'000'000;

struct TrialConfig {
    MiningPowerSplit power;
    std::uint64_t z = 0;
    std::uint32_t budget_surplus = kDefaultBudgetSurplus;
    std::uint64_t max_blocks = kDefaultMaxBlocks;  ///< per-trial safety cap

    void validate() const;

    friend bool operator==(const TrialConfig&, const TrialConfig&) = default;
};

struct TrialRecord {
    std::uint64_t k_during_wait = 0;
    bool attacker_won = false;
    std::uint64_t blocks_elapsed = 0;
    bool capped = false;  ///< hit max_blocks; never also a win
};

/// Counts of an integer observable (attacker blocks during the wait).
class KHistogram {
public:
    void add(std::uint64_t k, std::uint64_t count = 1);
    void merge(const KHistogram& other);

    std::uint64_t total() const { return total_; }
    std::uint64_t count(std::uint64_t k) const;
    double frequency(std::uint64_t k) const;
    std::uint64_t max_k() const;

    double mean() const;
    /// Unbiased sample variance; 0 with fewer than two samples.
    double variance() const;
    /// Standard error of mean().
    double mean_std_error() const;

    const std::map<std::uint64_t, std::uint64_t>& counts() const { return counts_; }

    friend bool operator==(const KHistogram&, const KHistogram&) = default;

private:
    std::map<std::uint64_t, std::uint64_t> counts_;
    std::uint64_t total_ = 0;
};

struct SimulationResult {
    TrialConfig config;
    std::uint64_t trials = 0;
    std::uint64_t wins = 0;
    KHistogram k_histogram;
    std::uint64_t master_seed = 0;
    std::uint64_t capped_count = 0;

    double success_rate() const;
    /// Binomial standard error sqrt(m (1 - m) / trials).
    double std_error() const;

    friend bool operator==(const SimulationResult&, const SimulationResult&) = default;
};

/// Successes out of trials for a Bernoulli-valued experiment.
struct EmpiricalRate {
    std::uint64_t successes = 0;
    std::uint64_t trials = 0;
    std::uint64_t capped = 0;

    double rate() const;
    double std_error() const;
    Probability probability() const { return Probability::checked(rate()); }

    friend bool operator==(const EmpiricalRate&, const EmpiricalRate&) = default;
};

/// `threads` == 0 means std::thread::hardware_concurrency(). The thread count
/// never changes results.
struct ParallelOptions {
    unsigned threads = 0;
};

TrialRecord simulate_trial(SplitMix64& rng, const TrialConfig& config);

/// Trial t draws from SplitMix64(derive_stream_seed(master_seed, t)).
/// Throws std::invalid_argument when trials == 0.
SimulationResult run_trials(const TrialConfig& config, std::uint64_t trials, std::uint64_t master_seed,
                            ParallelOptions parallel = {});

/// Pure chase-phase walks: start `deficit` behind, win at 0, give up at
/// deficit + budget. A zero deficit is an immediate win.
EmpiricalRate empirical_catch_up(const MiningPowerSplit& power, std::uint64_t deficit, std::uint64_t budget,
                                 std::uint64_t trials, std::uint64_t master_seed,
                                 ParallelOptions parallel = {},
                                 std::uint64_t max_blocks = kDefaultMaxBlocks);

/// Waiting-phase only: the number of attacker blocks mined while the honest
/// miners produce z blocks. Its exact law is negative binomial, which the
/// Poisson pmf only approximates. Requires z >= 1.
KHistogram empirical_k_distribution(const MiningPowerSplit& power, std::uint64_t z, std::uint64_t trials,
                                    std::uint64_t master_seed, ParallelOptions parallel = {});

}  // namespace dsrace

#endif  // DSRACE_SIMULATOR_HPP
