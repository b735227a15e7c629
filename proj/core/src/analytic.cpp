// Copyright (c) 2026 The dsrace developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <dsrace/analytic.hpp>

#include <boost/math/special_functions/gamma.hpp>

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace dsrace {

namespace {

// Exponents above this go through exp(n log r) rather than pow.
constexpr std::uint64_t kDirectPowerLimit = 64;

// log(p/q), with p = 1 - q taken through log1p.
double log_honest_over_attacker(double q)
{
    return std::log1p(-q) - std::log(q);
}

// ratio^n for 0 < ratio, accurate for large n.
double ratio_power(double ratio, std::uint64_t n)
{
    if (n == 0) return 1.0;
    if (n <= kDirectPowerLimit) return std::pow(ratio, static_cast<double>(n));
    return std::exp(static_cast<double>(n) * std::log(ratio));
}

bool is_fair_game(double q)
{
    return std::fabs((1.0 - q) - q) <= kFairGameTolerance;
}

}  // namespace

Probability ruin_win_probability(const RuinGameSpec& game)
{
    game.validate();
    const auto i = static_cast<double>(game.fortune);
    const auto n = static_cast<double>(game.target);

    if (is_fair_game(game.win_prob)) {
        return Probability::from_raw(i / n);
    }

    // With r = p/q the answer is (1 - r^i) / (1 - r^N). Writing it in terms of
    // a ratio s < 1 keeps every power bounded:
    //   r < 1:  (1 - r^i) / (1 - r^N)               = expm1(i L) / expm1(N L),   L = log r
    //   r > 1:  s^(N-i) (1 - s^i) / (1 - s^N),  s = 1/r, same form with L = log s
    const double log_r = log_honest_over_attacker(game.win_prob);
    const double log_s = log_r < 0.0 ? log_r : -log_r;
    double value = std::expm1(i * log_s) / std::expm1(n * log_s);
    if (log_r > 0.0) {
        value *= std::exp((n - i) * log_s);
    }
    return Probability::from_raw(value);
}

Probability catch_up_unlimited(std::uint64_t z, const MiningPowerSplit& power)
{
    if (power.attacker_dominates()) return Probability::one();
    return Probability::from_raw(ratio_power(power.attacker_ratio(), z));
}

Probability catch_up_limited(std::uint64_t z, std::uint64_t budget, const MiningPowerSplit& power)
{
    if (budget == 0) {
        throw std::invalid_argument("catch-up budget y must be at least 1");
    }
    return ruin_win_probability(RuinGameSpec{budget, budget + z, power.attacker()});
}

PoissonRate poisson_rate(std::uint64_t z, const MiningPowerSplit& power)
{
    return PoissonRate{static_cast<double>(z) * power.attacker() / power.honest()};
}

Probability poisson_pmf(std::uint64_t k, PoissonRate rate)
{
    const double lambda = rate.lambda();
    if (lambda == 0.0) {
        return k == 0 ? Probability::one() : Probability::zero();
    }
    const auto kd = static_cast<double>(k);
    const double log_pmf = kd * std::log(lambda) - lambda - boost::math::lgamma(kd + 1.0);
    return Probability::from_raw(std::exp(log_pmf));
}

std::uint64_t last_summand_index(FormulaVariant variant, std::uint64_t z)
{
    return variant == FormulaVariant::Original ? z : z + 1;
}

Probability summand_catch_up(const AttackQuery& query, std::uint64_t k)
{
    const std::uint64_t last = last_summand_index(query.variant, query.z);
    if (k >= last) return Probability::one();
    const std::uint64_t deficit = last - k;

    switch (query.variant) {
    case FormulaVariant::Original:
    case FormulaVariant::Corrected:
        return catch_up_unlimited(deficit, query.power);
    case FormulaVariant::Budgeted: {
        // The budget shrinks with every block mined during the wait:
        // y = z + surplus - k, which stays >= surplus because k <= z here.
        assert(query.budget_surplus >= 1);
        const std::uint64_t budget = query.z + query.budget_surplus - k;
        return catch_up_limited(deficit, budget, query.power);
    }
    }
    throw std::logic_error("unhandled formula variant");
}

std::vector<AttackSummand> attack_summands(const AttackQuery& query)
{
    query.validate();
    const PoissonRate rate = poisson_rate(query.z, query.power);
    const std::uint64_t last = last_summand_index(query.variant, query.z);

    std::vector<AttackSummand> terms;
    terms.reserve(last + 1);
    for (std::uint64_t k = 0; k <= last; ++k) {
        AttackSummand term;
        term.k = k;
        term.pmf = poisson_pmf(k, rate).value();
        term.catch_up = summand_catch_up(query, k).value();
        term.product = term.pmf * term.catch_up;
        terms.push_back(term);
    }
    return terms;
}

Probability attack_success(const AttackQuery& query)
{
    const auto terms = attack_summands(query);
    const double lambda = poisson_rate(query.z, query.power).lambda();
    const auto last = static_cast<double>(last_summand_index(query.variant, query.z));

    // P(X > last) for X ~ Poisson(lambda) is the regularized lower gamma P(last + 1, lambda).
    double total = lambda == 0.0 ? 0.0 : boost::math::gamma_p(last + 1.0, lambda);
    for (const auto& term : terms) {
        total += term.product;
    }
    return Probability::from_raw(total);
}

std::optional<std::uint64_t> min_confirmations(const MiningPowerSplit& power, double target,
                                               FormulaVariant variant, std::uint32_t budget_surplus,
                                               std::uint64_t search_cap)
{
    if (!(target > 0.0 && target < 1.0)) {
        throw std::invalid_argument("target probability must lie strictly between 0 and 1");
    }
    if (variant != FormulaVariant::Budgeted && power.attacker_dominates()) {
        return std::nullopt;
    }
    for (std::uint64_t z = 0; z <= search_cap; ++z) {
        const AttackQuery query{power, z, variant, budget_surplus};
        if (attack_success(query).value() <= target) return z;
    }
    return std::nullopt;
}

}  // namespace dsrace
