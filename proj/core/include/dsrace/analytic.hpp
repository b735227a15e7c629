// Copyright (c) 2026 The dsrace developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef DSRACE_ANALYTIC_HPP
#define DSRACE_ANALYTIC_HPP

#include <dsrace/probability.hpp>

#include <cstdint>
#include <optional>
#include <vector>

// Closed-form double-spend model. Every function here is pure and may be
// called concurrently.
namespace dsrace {

/// Probability that a gambler starting at `fortune` reaches `target` before 0.
/// Exactly 0 at fortune 0 and exactly 1 at fortune == target.
Probability ruin_win_probability(const RuinGameSpec& game);

/// Probability an attacker ever erases a deficit of z blocks with unlimited
/// resources: 1 when p <= q, (q/p)^z otherwise.
Probability catch_up_unlimited(std::uint64_t z, const MiningPowerSplit& power);

/// Same race, but the attacker abandons once the deficit grows by `budget`
/// blocks beyond its start. Equal to ruin_win_probability(i = budget,
/// N = budget + z). Throws std::invalid_argument when budget == 0.
Probability catch_up_limited(std::uint64_t z, std::uint64_t budget, const MiningPowerSplit& power);

/// lambda = z q / p
PoissonRate poisson_rate(std::uint64_t z, const MiningPowerSplit& power);

/// lambda^k e^-lambda / k!, evaluated in log space so large k or lambda stay
/// finite.
Probability poisson_pmf(std::uint64_t k, PoissonRate rate);

/// One term of the attack sum: attacker mined `k` blocks during the wait with
/// probability `pmf`, then wins the chase with probability `catch_up`.
struct AttackSummand {
    std::uint64_t k = 0;
    double pmf = 0.0;
    double catch_up = 0.0;
    double product = 0.0;  ///< pmf * catch_up
};

/// Largest k carried explicitly in the attack sum (z for Original, z + 1
/// otherwise). Beyond it the attacker is already ahead and catch_up is 1.
std::uint64_t last_summand_index(FormulaVariant variant, std::uint64_t z);

/// Chase-phase win probability for the given variant once the attacker has
/// mined k blocks during the wait.
Probability summand_catch_up(const AttackQuery& query, std::uint64_t k);

/// Per-k terms k = 0..last_summand_index(variant, z), with lambda = z q / p
/// for every variant.
std::vector<AttackSummand> attack_summands(const AttackQuery& query);

/// Overall probability that the double-spend succeeds:
///
///   1 - sum_{k=0}^{M} pmf(k) (1 - catch_up(k))
///
/// evaluated as sum_{k<=M} pmf(k) catch_up(k) + P(X > M) so that tiny
/// success probabilities keep their relative precision.
Probability attack_success(const AttackQuery& query);

inline constexpr std::uint64_t kMinConfirmationsSearchCap = 10000;

/// Smallest z >= 0 whose attack success is at most `target`, found by
/// ascending enumeration. Returns nullopt when the attacker holds at least
/// half the power (Original and Corrected) or when no z <= `search_cap`
/// qualifies. Throws std::invalid_argument unless 0 < target < 1.
std::optional<std::uint64_t> min_confirmations(const MiningPowerSplit& power, double target,
                                               FormulaVariant variant,
                                               std::uint32_t budget_surplus = kDefaultBudgetSurplus,
                                               std::uint64_t search_cap = kMinConfirmationsSearchCap);

}  // namespace dsrace

#endif  // DSRACE_ANALYTIC_HPP
