// Copyright (c) 2026 The dsrace developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <dsrace/validation.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dsrace {

namespace {

template <class T>
bool strictly_ascending(const std::vector<T>& values)
{
    return std::adjacent_find(values.begin(), values.end(),
                              [](const T& a, const T& b) { return !(a < b); }) == values.end();
}

double binomial_std_error(double m, std::uint64_t n)
{
    if (n == 0) return 0.0;
    return std::sqrt(std::max(0.0, m * (1.0 - m)) / static_cast<double>(n));
}

// Sub-experiment seeds inside one attribution run.
constexpr std::uint64_t kRaceStream = 0;
constexpr std::uint64_t kWaitStream = 1;
constexpr std::uint64_t kFirstChaseStream = 2;

// Offset of a grid cell's attribution seed from its validation seed.
constexpr std::uint64_t kAttributionStream = 1;

}  // namespace

void SweepGrid::validate() const
{
    if (q_values.empty() || z_values.empty()) {
        throw std::invalid_argument("sweep grid needs at least one q and one z");
    }
    if (!strictly_ascending(q_values) || !strictly_ascending(z_values)) {
        throw std::invalid_argument("sweep grid axes must be ascending without duplicates");
    }
    if (!(q_values.front() > 0.0 && q_values.back() < 1.0)) {
        throw std::invalid_argument("sweep grid q values must lie in (0,1)");
    }
    if (budget_surplus < 1) throw std::invalid_argument("budget_surplus must be at least 1");
    if (trials < 1) throw std::invalid_argument("trials must be at least 1");
}

std::uint64_t cell_seed(std::uint64_t master_seed, std::size_t q_index, std::size_t z_index)
{
    return derive_stream_seed(derive_stream_seed(master_seed, q_index), z_index);
}

Probability empirical_k_weighted_success(const AttackQuery& query, const KHistogram& k_histogram)
{
    if (k_histogram.total() == 0) throw std::invalid_argument("empty k histogram");
    double total = 0.0;
    for (const auto& [k, count] : k_histogram.counts()) {
        total += static_cast<double>(count) * summand_catch_up(query, k).value();
    }
    return Probability::from_raw(total / static_cast<double>(k_histogram.total()));
}

std::vector<ValidationRow> run_validation(const SweepGrid& grid, ParallelOptions parallel)
{
    grid.validate();
    std::vector<ValidationRow> rows;
    rows.reserve(grid.q_values.size() * grid.z_values.size());

    for (std::size_t qi = 0; qi < grid.q_values.size(); ++qi) {
        const MiningPowerSplit power(grid.q_values[qi]);
        for (std::size_t zi = 0; zi < grid.z_values.size(); ++zi) {
            const std::uint64_t z = grid.z_values[zi];
            const AttackQuery model_query{power, z, grid.variant, grid.budget_surplus};
            const AttackQuery chase_query{power, z, FormulaVariant::Budgeted, grid.budget_surplus};
            const TrialConfig config{power, z, grid.budget_surplus};
            const SimulationResult sim =
                run_trials(config, grid.trials, cell_seed(grid.master_seed, qi, zi), parallel);

            ValidationRow row;
            row.q = power.attacker();
            row.z = z;
            row.model_prob = attack_success(model_query).value();
            row.sim_prob = sim.success_rate();
            row.sim_std_err = sim.std_error();
            row.abs_error = std::fabs(row.model_prob - row.sim_prob);
            if (row.sim_prob > 0.0) row.rel_error = row.abs_error / row.sim_prob;
            row.trials = sim.trials;
            row.hybrid_prob = empirical_k_weighted_success(chase_query, sim.k_histogram).value();
            row.hybrid_abs_error = std::fabs(row.hybrid_prob - row.sim_prob);
            row.capped = sim.capped_count;
            rows.push_back(row);
        }
    }
    return rows;
}

double sigma_distance(double observed, double expected, double std_error)
{
    const double gap = std::fabs(observed - expected);
    if (std_error > 0.0) return gap / std_error;
    return gap == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

double CatchUpCheck::std_error() const
{
    return binomial_std_error(model, sim.trials);
}

double CatchUpCheck::sigmas() const
{
    return sigma_distance(sim.rate(), model, std_error());
}

double MeanKCheck::sigmas() const
{
    return sigma_distance(mean, lambda, std_error);
}

double PmfCheck::sigmas() const
{
    return sigma_distance(tv_distance, 0.0, tv_std_error);
}

double HybridCheck::std_error() const
{
    return binomial_std_error(sim, trials);
}

double HybridCheck::poisson_sigmas() const
{
    return sigma_distance(sim, poisson_model, std_error());
}

double HybridCheck::hybrid_sigmas() const
{
    return sigma_distance(sim, hybrid_model, std_error());
}

AttributionReport component_attribution(const MiningPowerSplit& power, std::uint64_t z,
                                        std::uint32_t budget_surplus, std::uint64_t trials,
                                        std::uint64_t master_seed, ParallelOptions parallel)
{
    if (z == 0) throw std::invalid_argument("component attribution needs z >= 1");
    if (budget_surplus < 1) throw std::invalid_argument("budget_surplus must be at least 1");

    AttributionReport report;
    report.q = power.attacker();
    report.z = z;
    report.budget_surplus = budget_surplus;
    report.trials = trials;
    report.master_seed = master_seed;

    const AttackQuery query{power, z, FormulaVariant::Budgeted, budget_surplus};

    // (a) chase phase, at every deficit the budgeted sum actually uses
    for (std::uint64_t k = 0; k <= z; ++k) {
        CatchUpCheck check;
        check.k = k;
        check.deficit = z + 1 - k;
        check.budget = z + budget_surplus - k;
        check.model = catch_up_limited(check.deficit, check.budget, power).value();
        check.sim = empirical_catch_up(power, check.deficit, check.budget, trials,
                                       derive_stream_seed(master_seed, kFirstChaseStream + k), parallel);
        report.catch_up.push_back(check);
    }

    // (b) and (c) waiting phase
    const KHistogram waiting = empirical_k_distribution(power, z, trials,
                                                        derive_stream_seed(master_seed, kWaitStream), parallel);
    const PoissonRate rate = poisson_rate(z, power);
    report.mean_k = MeanKCheck{rate.lambda(), waiting.mean(), waiting.mean_std_error(), waiting.variance()};

    double poisson_mass_seen = 0.0;
    double abs_gap = 0.0;
    double noise = 0.0;
    const auto n = static_cast<double>(waiting.total());
    for (std::uint64_t k = 0; k <= waiting.max_k(); ++k) {
        const PmfRow row{k, poisson_pmf(k, rate).value(), waiting.frequency(k)};
        poisson_mass_seen += row.poisson;
        abs_gap += std::fabs(row.empirical - row.poisson);
        noise += std::sqrt(row.empirical * (1.0 - row.empirical) / n);
        report.pmf.rows.push_back(row);
    }
    // Poisson mass beyond the largest observed k is all unmatched.
    abs_gap += std::max(0.0, 1.0 - poisson_mass_seen);
    report.pmf.tv_distance = 0.5 * abs_gap;
    report.pmf.tv_std_error = 0.5 * noise;

    // Full race, and the model rebuilt from its own k histogram.
    const SimulationResult race = run_trials(TrialConfig{power, z, budget_surplus}, trials,
                                             derive_stream_seed(master_seed, kRaceStream), parallel);
    report.hybrid.poisson_model = attack_success(query).value();
    report.hybrid.hybrid_model = empirical_k_weighted_success(query, race.k_histogram).value();
    report.hybrid.sim = race.success_rate();
    report.hybrid.trials = race.trials;
    return report;
}

std::vector<AttributionReport> run_attribution(const SweepGrid& grid, ParallelOptions parallel)
{
    grid.validate();
    std::vector<AttributionReport> reports;
    for (std::size_t qi = 0; qi < grid.q_values.size(); ++qi) {
        const MiningPowerSplit power(grid.q_values[qi]);
        for (std::size_t zi = 0; zi < grid.z_values.size(); ++zi) {
            const std::uint64_t z = grid.z_values[zi];
            if (z == 0) continue;
            const std::uint64_t seed = derive_stream_seed(cell_seed(grid.master_seed, qi, zi), kAttributionStream);
            reports.push_back(component_attribution(power, z, grid.budget_surplus, grid.trials, seed, parallel));
        }
    }
    return reports;
}

std::vector<ComponentVerdict> summarize(const AttributionReport& report)
{
    std::vector<ComponentVerdict> out;

    const auto worst = std::max_element(report.catch_up.begin(), report.catch_up.end(),
                                        [](const CatchUpCheck& a, const CatchUpCheck& b) {
                                            return a.sigmas() < b.sigmas();
                                        });
    if (worst != report.catch_up.end()) {
        out.push_back({"catch_up", worst->sim.rate(), worst->model, worst->std_error(), worst->sigmas(), false});
    }
    out.push_back({"mean_k", report.mean_k.mean, report.mean_k.lambda, report.mean_k.std_error,
                   report.mean_k.sigmas(), false});
    out.push_back({"k_pmf", report.pmf.tv_distance, 0.0, report.pmf.tv_std_error, report.pmf.sigmas(), false});
    out.push_back({"hybrid", report.hybrid.sim, report.hybrid.hybrid_model, report.hybrid.std_error(),
                   report.hybrid.hybrid_sigmas(), false});

    for (auto& verdict : out) verdict.outlier = verdict.sigmas > kOutlierSigmas;
    return out;
}

}  // namespace dsrace
