// Copyright (c) 2026 The dsrace developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <dsrace/validation.hpp>

#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace dsrace;

namespace {

SweepGrid small_grid()
{
    SweepGrid grid;
    grid.q_values = {0.1, 0.25, 0.4};
    grid.z_values = {1, 3, 6};
    grid.trials = 20'000;
    grid.master_seed = 9;
    return grid;
}

bool same_row(const ValidationRow& a, const ValidationRow& b)
{
    return a.q == b.q && a.z == b.z && a.model_prob == b.model_prob && a.sim_prob == b.sim_prob &&
           a.sim_std_err == b.sim_std_err && a.abs_error == b.abs_error && a.rel_error == b.rel_error &&
           a.trials == b.trials && a.hybrid_prob == b.hybrid_prob &&
           a.hybrid_abs_error == b.hybrid_abs_error && a.capped == b.capped;
}

}  // namespace

TEST_SUITE("SweepGrid")
{
    TEST_CASE("rejects malformed axes")
    {
        SweepGrid grid = small_grid();
        CHECK_NOTHROW(grid.validate());

        SweepGrid empty = grid;
        empty.q_values.clear();
        CHECK_THROWS_AS(empty.validate(), std::invalid_argument);

        SweepGrid duplicate = grid;
        duplicate.z_values = {1, 1, 3};
        CHECK_THROWS_AS(duplicate.validate(), std::invalid_argument);

        SweepGrid descending = grid;
        descending.q_values = {0.3, 0.2};
        CHECK_THROWS_AS(descending.validate(), std::invalid_argument);

        SweepGrid out_of_range = grid;
        out_of_range.q_values = {0.2, 1.0};
        CHECK_THROWS_AS(out_of_range.validate(), std::invalid_argument);

        SweepGrid no_budget = grid;
        no_budget.budget_surplus = 0;
        CHECK_THROWS_AS(no_budget.validate(), std::invalid_argument);
    }
}

TEST_SUITE("run_validation")
{
    TEST_CASE("rows are ordered and the model column comes from the closed form alone")
    {
        const SweepGrid grid = small_grid();
        const auto rows = run_validation(grid);
        REQUIRE(rows.size() == 9);
        std::size_t i = 0;
        for (double q : grid.q_values) {
            for (std::uint64_t z : grid.z_values) {
                const ValidationRow& row = rows[i++];
                CHECK(row.q == q);
                CHECK(row.z == z);
                const AttackQuery query{MiningPowerSplit(q), z, grid.variant, grid.budget_surplus};
                CHECK(row.model_prob == attack_success(query).value());
                CHECK(row.abs_error == std::fabs(row.model_prob - row.sim_prob));
                REQUIRE(row.rel_error.has_value());
                CHECK(*row.rel_error == row.abs_error / row.sim_prob);
                CHECK(row.sim_std_err == doctest::Approx(oracle::binomial_se(row.sim_prob, row.trials)));
                CHECK(row.trials == grid.trials);
            }
        }
    }

    TEST_CASE("relative error is absent when the simulation saw no wins")
    {
        SweepGrid grid;
        grid.q_values = {0.01};
        grid.z_values = {12};
        grid.trials = 1000;
        const auto rows = run_validation(grid);
        REQUIRE(rows.size() == 1);
        CHECK(rows[0].sim_prob == 0.0);
        CHECK_FALSE(rows[0].rel_error.has_value());
    }

    TEST_CASE("byte-stable across runs and thread counts")
    {
        const SweepGrid grid = small_grid();
        const auto a = run_validation(grid, {1});
        const auto b = run_validation(grid, {1});
        const auto c = run_validation(grid, {4});
        REQUIRE(a.size() == b.size());
        REQUIRE(a.size() == c.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(same_row(a[i], b[i]));
            CHECK(same_row(a[i], c[i]));
        }
    }

    TEST_CASE("appending grid values leaves existing cells untouched")
    {
        SweepGrid narrow = small_grid();
        narrow.q_values = {0.1};
        narrow.z_values = {1, 3};
        SweepGrid wide = small_grid();
        wide.q_values = {0.1, 0.3};
        wide.z_values = {1, 3, 9};
        const auto a = run_validation(narrow);
        const auto b = run_validation(wide);
        CHECK(same_row(a[0], b[0]));
        CHECK(same_row(a[1], b[1]));
    }

    TEST_CASE("q = 1/4, z = 3 stays under four percent")
    {
        SweepGrid grid;
        grid.q_values = {0.25};
        grid.z_values = {3};
        grid.trials = 100'000;
        const auto rows = run_validation(grid);
        CHECK(rows[0].abs_error < 0.04);
    }

    TEST_CASE("low attacker power shows relative errors of order one")
    {
        SweepGrid grid;
        grid.q_values = {0.05, 0.1};
        grid.z_values = {4, 6};
        grid.trials = 1'000'000;
        const auto rows = run_validation(grid);
        // q = 0.1, z = 6: exact race 1.10e-4 against model 3.28e-5
        const ValidationRow& cell = rows[3];
        REQUIRE(cell.rel_error.has_value());
        CHECK(*cell.rel_error > 0.4);
        CHECK(*cell.rel_error < 1.0);
        // q = 0.05, z = 4: roughly 35 wins expected
        const ValidationRow& sparse = rows[0];
        REQUIRE(sparse.rel_error.has_value());
        CHECK(*sparse.rel_error > 0.3);
    }

    TEST_CASE("hybrid model removes most of the error where the Poisson model misses")
    {
        SweepGrid grid;
        grid.q_values = {0.1, 0.2, 0.3, 0.4};
        grid.z_values = {1, 3, 6, 12};
        grid.trials = 100'000;
        const auto rows = run_validation(grid);
        int significant = 0;
        int improved = 0;
        for (const auto& row : rows) {
            if (row.abs_error > 2.0 * row.sim_std_err) {
                ++significant;
                if (row.hybrid_abs_error < row.abs_error) ++improved;
            }
        }
        REQUIRE(significant > 0);
        CHECK(improved >= 0.9 * significant);
    }
}

TEST_SUITE("component_attribution")
{
    TEST_CASE("q = 1/4, z = 3 points at the pmf")
    {
        const AttributionReport report = component_attribution(MiningPowerSplit(0.25), 3, 35, 200'000, 2);
        REQUIRE(report.catch_up.size() == 4);
        for (const auto& check : report.catch_up) {
            CHECK(check.deficit == 4 - check.k);
            CHECK(check.budget == 38 - check.k);
            CHECK(check.sigmas() <= 3.0);
        }
        CHECK(report.mean_k.lambda == 1.0);
        CHECK(report.mean_k.sigmas() <= 3.0);
        CHECK(report.mean_k.variance > report.mean_k.lambda);

        // total variation between NB(3, 0.75) and Poisson(1) is about 0.0772
        CHECK(report.pmf.tv_distance == doctest::Approx(0.0772).epsilon(0.05));
        CHECK(report.pmf.sigmas() > 5.0);

        CHECK(report.hybrid.hybrid_sigmas() <= 3.0);
        CHECK(report.hybrid.poisson_sigmas() > 3.0);

        const auto verdicts = summarize(report);
        REQUIRE(verdicts.size() == 4);
        CHECK(verdicts[0].component == "catch_up");
        CHECK_FALSE(verdicts[0].outlier);
        CHECK(verdicts[1].component == "mean_k");
        CHECK_FALSE(verdicts[1].outlier);
        CHECK(verdicts[2].component == "k_pmf");
        CHECK(verdicts[2].outlier);
        CHECK(verdicts[3].component == "hybrid");
        CHECK_FALSE(verdicts[3].outlier);
    }

    TEST_CASE("pmf rows cover every observed k")
    {
        const AttributionReport report = component_attribution(MiningPowerSplit(0.3), 2, 35, 10'000, 4);
        REQUIRE_FALSE(report.pmf.rows.empty());
        double empirical = 0.0;
        for (std::size_t k = 0; k < report.pmf.rows.size(); ++k) {
            CHECK(report.pmf.rows[k].k == k);
            empirical += report.pmf.rows[k].empirical;
        }
        CHECK(empirical == doctest::Approx(1.0));
    }

    TEST_CASE("hybrid at q = 0.3, z = 5 agrees with the race")
    {
        const AttributionReport report = component_attribution(MiningPowerSplit(0.3), 5, 35, 100'000, 6);
        CHECK(report.hybrid.hybrid_sigmas() <= 3.0);
    }

    TEST_CASE("requires z >= 1")
    {
        CHECK_THROWS_AS(component_attribution(MiningPowerSplit(0.3), 0, 35, 10, 1), std::invalid_argument);
    }
}

TEST_CASE("empirical k weighting")
{
    const AttackQuery query{MiningPowerSplit(0.3), 4, FormulaVariant::Budgeted, 35};
    KHistogram all_zero;
    all_zero.add(0, 10);
    CHECK(empirical_k_weighted_success(query, all_zero) == summand_catch_up(query, 0));

    KHistogram ahead;
    ahead.add(9, 3);
    CHECK(empirical_k_weighted_success(query, ahead).value() == 1.0);

    // exact negative binomial weights reproduce the exact race value
    KHistogram nb;
    for (std::uint64_t k = 0; k < 200; ++k) {
        nb.add(k, static_cast<std::uint64_t>(std::llround(1e12 * static_cast<double>(oracle::negative_binomial_pmf(k, 4, 0.7L)))));
    }
    CHECK(empirical_k_weighted_success(query, nb).value() ==
          doctest::Approx(static_cast<double>(oracle::exact_race_success(0.3L, 4, 35))).epsilon(1e-9));

    CHECK_THROWS_AS(empirical_k_weighted_success(query, KHistogram{}), std::invalid_argument);
}
