// Copyright (c) 2026 The dsrace developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef DSRACE_VALIDATION_HPP
#define DSRACE_VALIDATION_HPP

#include <dsrace/analytic.hpp>
#include <dsrace/probability.hpp>
#include <dsrace/simulator.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dsrace {

/// Axes of a model-versus-simulation sweep.
struct SweepGrid {
    std::vector<double> q_values;
    std::vector<std::uint64_t> z_values;
    FormulaVariant variant = FormulaVariant::Budgeted;
    std::uint32_t budget_surplus = kDefaultBudgetSurplus;
    std::uint64_t trials = 100'000;
    std::uint64_t master_seed = 42;

    /// Lists must be non-empty, strictly ascending, q in (0,1); throws
    /// std::invalid_argument otherwise.
    void validate() const;
};

/// Seed of grid cell (q index, z index). Depends only on the indices, so
/// appending q or z values leaves existing cells untouched.
std::uint64_t cell_seed(std::uint64_t master_seed, std::size_t q_index, std::size_t z_index);

struct ValidationRow {
    double q = 0.0;
    std::uint64_t z = 0;
    double model_prob = 0.0;
    double sim_prob = 0.0;
    double sim_std_err = 0.0;
    double abs_error = 0.0;
    std::optional<double> rel_error;  ///< absent when sim_prob == 0
    std::uint64_t trials = 0;
    /// Budgeted attack sum re-weighted by the simulated k histogram in place
    /// of the Poisson pmf.
    double hybrid_prob = 0.0;
    double hybrid_abs_error = 0.0;  ///< |hybrid_prob - sim_prob|
    std::uint64_t capped = 0;
};

/// Cells ordered by (q, z). Output is identical for any thread count.
std::vector<ValidationRow> run_validation(const SweepGrid& grid, ParallelOptions parallel = {});

/// sum_k freq(k) * catch_up(k): the attack sum with the Poisson weights
/// replaced by an observed distribution of k.
Probability empirical_k_weighted_success(const AttackQuery& query, const KHistogram& k_histogram);

// --- component attribution -------------------------------------------------

/// |observed - expected| / std_error, with 0/0 read as 0 and x/0 as infinity.
double sigma_distance(double observed, double expected, double std_error);

/// Empirical chase-phase win rate against the budgeted closed form for the
/// deficit left after k attacker blocks.
struct CatchUpCheck {
    std::uint64_t k = 0;
    std::uint64_t deficit = 0;
    std::uint64_t budget = 0;
    double model = 0.0;
    EmpiricalRate sim;

    double std_error() const;
    double sigmas() const;
};

struct MeanKCheck {
    double lambda = 0.0;
    double mean = 0.0;
    double std_error = 0.0;
    double variance = 0.0;

    double sigmas() const;
};

struct PmfRow {
    std::uint64_t k = 0;
    double poisson = 0.0;
    double empirical = 0.0;
};

struct PmfCheck {
    std::vector<PmfRow> rows;  ///< k = 0 .. largest observed k
    double tv_distance = 0.0;
    /// Upper bound on the sampling noise of tv_distance:
    /// 0.5 * sum_k sqrt(f_k (1 - f_k) / n).
    double tv_std_error = 0.0;

    double sigmas() const;
};

struct HybridCheck {
    double poisson_model = 0.0;
    double hybrid_model = 0.0;
    double sim = 0.0;
    std::uint64_t trials = 0;

    /// Binomial standard error at the simulated rate.
    double std_error() const;
    double poisson_sigmas() const;
    double hybrid_sigmas() const;
};

struct AttributionReport {
    double q = 0.0;
    std::uint64_t z = 0;
    std::uint32_t budget_surplus = kDefaultBudgetSurplus;
    std::uint64_t trials = 0;
    std::uint64_t master_seed = 0;

    std::vector<CatchUpCheck> catch_up;  ///< one per k = 0..z
    MeanKCheck mean_k;
    PmfCheck pmf;
    HybridCheck hybrid;
};

/// Splits the model-vs-simulation gap at (q, z) into its three ingredients
/// (chase probability, Poisson rate, Poisson pmf) and rebuilds the model
/// with the empirical k distribution. Requires z >= 1.
AttributionReport component_attribution(const MiningPowerSplit& power, std::uint64_t z,
                                        std::uint32_t budget_surplus, std::uint64_t trials,
                                        std::uint64_t master_seed, ParallelOptions parallel = {});

/// component_attribution for every grid cell with z >= 1, in (q, z) order.
/// Each cell's seed is derived from cell_seed(), independent of the
/// run_validation stream for the same cell.
std::vector<AttributionReport> run_attribution(const SweepGrid& grid, ParallelOptions parallel = {});

/// One line of an attribution summary.
struct ComponentVerdict {
    std::string component;  ///< "catch_up", "mean_k", "k_pmf" or "hybrid"
    double observed = 0.0;
    double expected = 0.0;
    double std_error = 0.0;
    double sigmas = 0.0;
    bool outlier = false;   ///< sigmas > kOutlierSigmas
};

inline constexpr double kOutlierSigmas = 3.0;

/// For catch_up the worst of the per-k checks is reported. For k_pmf the
/// observed value is the total variation distance and expected is 0.
std::vector<ComponentVerdict> summarize(const AttributionReport& report);

}  // namespace dsrace

#endif  // DSRACE_VALIDATION_HPP
