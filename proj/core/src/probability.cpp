// Copyright (c) 2026 The dsrace developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <dsrace/probability.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dsrace {

Probability Probability::from_raw(double raw)
{
    if (!(raw >= -kProbabilityGuardBand && raw <= 1.0 + kProbabilityGuardBand)) {
        throw std::logic_error("probability computation left [0,1]: " + std::to_string(raw));
    }
    return Probability{std::clamp(raw, 0.0, 1.0)};
}

Probability Probability::checked(double value)
{
    if (!(value >= 0.0 && value <= 1.0)) {
        throw std::invalid_argument("probability must lie in [0,1], got " + std::to_string(value));
    }
    return Probability{value};
}

MiningPowerSplit::MiningPowerSplit(double attacker_share) : q_(attacker_share)
{
    if (!(attacker_share > 0.0 && attacker_share < 1.0)) {
        throw std::invalid_argument("attacker mining share q must satisfy 0 < q < 1, got " +
                                    std::to_string(attacker_share));
    }
}

bool MiningPowerSplit::attacker_dominates() const
{
    return honest() - q_ <= kFairGameTolerance;
}

void RuinGameSpec::validate() const
{
    if (target == 0) {
        throw std::invalid_argument("ruin game target N must be at least 1");
    }
    if (fortune > target) {
        throw std::invalid_argument("ruin game fortune i must not exceed target N");
    }
    if (!(win_prob > 0.0 && win_prob < 1.0)) {
        throw std::invalid_argument("ruin game bet probability must lie in (0,1)");
    }
}

PoissonRate::PoissonRate(double lambda) : lambda_(lambda)
{
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        throw std::invalid_argument("Poisson rate must be finite and non-negative");
    }
}

std::string_view to_string(FormulaVariant variant)
{
    switch (variant) {
    case FormulaVariant::Original:
        return "original";
    case FormulaVariant::Corrected:
        return "corrected";
    case FormulaVariant::Budgeted:
        return "budgeted";
    }
    return "unknown";
}

FormulaVariant parse_variant(std::string_view name)
{
    if (name == "original") return FormulaVariant::Original;
    if (name == "corrected") return FormulaVariant::Corrected;
    if (name == "budgeted") return FormulaVariant::Budgeted;
    throw std::invalid_argument("unknown formula variant '" + std::string(name) + "'");
}

void AttackQuery::validate() const
{
    if (variant == FormulaVariant::Budgeted && budget_surplus < 1) {
        throw std::invalid_argument("budgeted variant requires budget_surplus >= 1");
    }
}

}  // namespace dsrace
