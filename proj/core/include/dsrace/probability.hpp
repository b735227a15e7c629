// Copyright (c) 2026 The dsrace developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef DSRACE_PROBABILITY_HPP
#define DSRACE_PROBABILITY_HPP

#include <compare>
#include <cstdint>
#include <string_view>

namespace dsrace {

/// Round-off tolerated outside [0, 1] before a raw result is treated as a bug.
inline constexpr double kProbabilityGuardBand = 1e-9;

/// |p - q| at or below this routes formulas to their fair-game (p = q) branch.
inline constexpr double kFairGameTolerance = 1e-12;

/**
 * A value in [0, 1].
 *
 * Raw results within kProbabilityGuardBand of the interval are clamped onto
 * it; anything further out (or NaN) throws std::logic_error, since it can only
 * come from an arithmetic defect upstream.
 */
class Probability {
public:
    constexpr Probability() = default;

    /// Clamps round-off, throws std::logic_error outside the guard band.
    static Probability from_raw(double raw);

    /// Throws std::invalid_argument unless 0 <= value <= 1.
    static Probability checked(double value);

    static constexpr Probability zero() { return Probability{0.0}; }
    static constexpr Probability one() { return Probability{1.0}; }

    constexpr double value() const { return value_; }
    constexpr Probability complement() const { return Probability{1.0 - value_}; }

    friend constexpr auto operator<=>(Probability, Probability) = default;

private:
    constexpr explicit Probability(double v) : value_(v) {}

    double value_ = 0.0;
};

/**
 * Split of block-finding power between the attacker (q) and the honest
 * miners (p = 1 - q). Only q is stored.
 */
class MiningPowerSplit {
public:
    /// Throws std::invalid_argument unless 0 < q < 1.
    explicit MiningPowerSplit(double attacker_share);

    double attacker() const { return q_; }
    double honest() const { return 1.0 - q_; }

    /// True when the honest miners do not hold a strict majority (p <= q).
    bool attacker_dominates() const;

    /// q/p
    double attacker_ratio() const { return q_ / honest(); }

    friend bool operator==(const MiningPowerSplit&, const MiningPowerSplit&) = default;

private:
    double q_;
};

/// Finite gambler's ruin: start at `fortune`, win $1 w.p. `win_prob` per bet,
/// stop at 0 (ruin) or `target`.
struct RuinGameSpec {
    std::uint64_t fortune = 0;
    std::uint64_t target = 1;
    double win_prob = 0.5;

    double loss_prob() const { return 1.0 - win_prob; }

    /// Throws std::invalid_argument on target == 0, fortune > target or a
    /// win probability outside (0, 1).
    void validate() const;
};

/// Expected number of attacker blocks during the merchant's wait.
class PoissonRate {
public:
    /// Throws std::invalid_argument on negative or non-finite rates.
    explicit PoissonRate(double lambda);

    double lambda() const { return lambda_; }

private:
    double lambda_;
};

enum class FormulaVariant {
    Original,   ///< attacker merely catches up (deficit z)
    Corrected,  ///< attacker must get one block ahead (deficit z + 1)
    Budgeted,   ///< Corrected with a finite deficit budget
};

inline constexpr std::uint32_t kDefaultBudgetSurplus = 35;

std::string_view to_string(FormulaVariant variant);

/// Parses "original", "corrected" or "budgeted"; throws std::invalid_argument.
FormulaVariant parse_variant(std::string_view name);

struct AttackQuery {
    MiningPowerSplit power;
    std::uint64_t z = 0;
    FormulaVariant variant = FormulaVariant::Corrected;
    std::uint32_t budget_surplus = kDefaultBudgetSurplus;

    void validate() const;
};

}  // namespace dsrace

#endif  // DSRACE_PROBABILITY_HPP
