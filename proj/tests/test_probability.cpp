// Copyright (c) 2026 The dsrace developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <dsrace/probability.hpp>

#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

using namespace dsrace;

TEST_CASE("Probability clamps round-off inside the guard band")
{
    CHECK(Probability::from_raw(-1e-13).value() == 0.0);
    CHECK(Probability::from_raw(1.0 + 1e-13).value() == 1.0);
    CHECK(Probability::from_raw(-5e-10).value() == 0.0);
    CHECK(Probability::from_raw(0.25).value() == 0.25);
}

TEST_CASE("Probability rejects raw values outside the guard band")
{
    CHECK_THROWS_AS(Probability::from_raw(-2e-9), std::logic_error);
    CHECK_THROWS_AS(Probability::from_raw(1.0 + 2e-9), std::logic_error);
    CHECK_THROWS_AS(Probability::from_raw(std::numeric_limits<double>::quiet_NaN()), std::logic_error);
    CHECK_THROWS_AS(Probability::checked(1.5), std::invalid_argument);
}

TEST_CASE("MiningPowerSplit stores q and derives p")
{
    const MiningPowerSplit split(0.3);
    CHECK(split.attacker() == 0.3);
    CHECK(split.honest() == 1.0 - 0.3);
    CHECK_FALSE(split.attacker_dominates());
    CHECK(MiningPowerSplit(0.5).attacker_dominates());
    CHECK(MiningPowerSplit(0.7).attacker_dominates());

    CHECK_THROWS_AS(MiningPowerSplit(0.0), std::invalid_argument);
    CHECK_THROWS_AS(MiningPowerSplit(1.0), std::invalid_argument);
    CHECK_THROWS_AS(MiningPowerSplit(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(MiningPowerSplit(std::nan("")), std::invalid_argument);
}

TEST_CASE("RuinGameSpec invariants")
{
    CHECK_NOTHROW((RuinGameSpec{0, 10, 0.3}.validate()));
    CHECK_NOTHROW((RuinGameSpec{10, 10, 0.3}.validate()));
    CHECK_THROWS_AS((RuinGameSpec{0, 0, 0.3}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((RuinGameSpec{11, 10, 0.3}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((RuinGameSpec{1, 10, 1.0}.validate()), std::invalid_argument);
}

TEST_CASE("PoissonRate rejects negative and non-finite rates")
{
    CHECK(PoissonRate(0.0).lambda() == 0.0);
    CHECK_THROWS_AS(PoissonRate(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(PoissonRate(std::numeric_limits<double>::infinity()), std::invalid_argument);
}

TEST_CASE("formula variant names round-trip")
{
    for (auto v : {FormulaVariant::Original, FormulaVariant::Corrected, FormulaVariant::Budgeted}) {
        CHECK(parse_variant(to_string(v)) == v);
    }
    CHECK_THROWS_AS(parse_variant("bogus"), std::invalid_argument);
}

TEST_CASE("budgeted queries need a positive surplus")
{
    const AttackQuery bad{MiningPowerSplit(0.2), 3, FormulaVariant::Budgeted, 0};
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    const AttackQuery fine{MiningPowerSplit(0.2), 3, FormulaVariant::Corrected, 0};
    CHECK_NOTHROW(fine.validate());
}
