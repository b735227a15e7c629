// Copyright (c) 2026 The dsrace developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "cli/commands.hpp"

#include "cli/output.hpp"

#include <dsrace/analytic.hpp>
#include <dsrace/simulator.hpp>
#include <dsrace/validation.hpp>

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string_view>

namespace dsrace::cli {

namespace {

struct CommonFlags {
    std::string format = "csv";
    std::string out_path;
};

void add_common(CLI::App& cmd, CommonFlags& flags)
{
    cmd.add_option("--format", flags.format, "Output format: csv or json")->capture_default_str();
    cmd.add_option("--out", flags.out_path, "Write tables to PATH instead of standard output");
}

struct ProbFlags {
    double q = 0.0;
    std::uint64_t z = 0;
    std::string variant = "corrected";
    std::uint32_t surplus = kDefaultBudgetSurplus;
    bool summands = false;
};

struct MinZFlags {
    std::vector<double> q;
    std::string q_range;
    std::vector<double> targets{0.001, 0.01, 0.1, 0.5};
    std::string variant = "corrected";
    std::uint32_t surplus = kDefaultBudgetSurplus;
    std::uint64_t search_cap = kMinConfirmationsSearchCap;
};

struct SimulateFlags {
    double q = 0.0;
    std::uint64_t z = 0;
    std::uint32_t surplus = kDefaultBudgetSurplus;
    std::uint64_t trials = 100'000;
    std::uint64_t seed = kDefaultSeed;
    std::uint64_t max_blocks = kDefaultMaxBlocks;
    bool histogram = false;
    unsigned threads = 0;
};

struct ValidateFlags {
    std::vector<double> q{0.1, 0.2, 0.3, 0.4};
    std::vector<std::uint64_t> z{1, 3, 6, 12, 24};
    std::string variant = "budgeted";
    std::uint32_t surplus = kDefaultBudgetSurplus;
    std::uint64_t trials = 100'000;
    std::uint64_t seed = kDefaultSeed;
    unsigned threads = 0;
    bool attribution = false;
};

// start:stop:step, inclusive of stop up to round-off; values are rounded to
// 12 decimals so 0.02 steps print as 0.06 rather than 0.060000000000000005.
std::vector<double> expand_range(const std::string& text)
{
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (ec != std::errc() || ptr != item.data() + item.size()) {
            throw std::invalid_argument("malformed --q-range '" + text + "' (expected start:stop:step)");
        }
        parts.push_back(v);
    }
    if (parts.size() != 3) throw std::invalid_argument("malformed --q-range '" + text + "' (expected start:stop:step)");
    const double start = parts[0], stop = parts[1], step = parts[2];
    if (!(step > 0.0) || !(stop >= start)) {
        throw std::invalid_argument("--q-range needs step > 0 and stop >= start");
    }
    const auto count = static_cast<std::uint64_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 1'000'000) throw std::invalid_argument("--q-range expands to too many points");
    std::vector<double> values;
    values.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        values.push_back(std::round((start + static_cast<double>(i) * step) * 1e12) / 1e12);
    }
    return values;
}

std::vector<Table> cmd_prob(const ProbFlags& f)
{
    const AttackQuery query{MiningPowerSplit(f.q), f.z, parse_variant(f.variant), f.surplus};
    const Probability p = attack_success(query);

    Table result{"probability", {"q", "z", "variant", "budget_surplus", "probability"}, {}};
    result.add_row({query.power.attacker(), query.z, std::string(to_string(query.variant)),
                    std::uint64_t{query.budget_surplus}, p.value()});
    std::vector<Table> tables{std::move(result)};

    if (f.summands) {
        Table terms{"summands", {"k", "pmf", "catch_up", "product"}, {}};
        for (const auto& term : attack_summands(query)) {
            terms.add_row({term.k, term.pmf, term.catch_up, term.product});
        }
        tables.push_back(std::move(terms));
    }
    return tables;
}

std::vector<Table> cmd_min_z(const MinZFlags& f)
{
    const std::vector<double> qs = f.q_range.empty() ? f.q : expand_range(f.q_range);
    if (qs.empty()) throw std::invalid_argument("min-z needs --q or --q-range");
    if (f.targets.empty()) throw std::invalid_argument("min-z needs at least one --target");
    const FormulaVariant variant = parse_variant(f.variant);

    Table table{"min_z", {"q", "target", "min_z"}, {}};
    for (double q : qs) {
        const MiningPowerSplit power(q);
        for (double target : f.targets) {
            const auto z = min_confirmations(power, target, variant, f.surplus, f.search_cap);
            table.add_row({power.attacker(), target, z ? Cell{*z} : Cell{Unbounded{}}});
        }
    }
    return {std::move(table)};
}

std::vector<Table> cmd_simulate(const SimulateFlags& f)
{
    TrialConfig config{MiningPowerSplit(f.q), f.z, f.surplus, f.max_blocks};
    const SimulationResult sim = run_trials(config, f.trials, f.seed, ParallelOptions{f.threads});

    Table summary{"summary", {"q", "z", "surplus", "trials", "wins", "rate", "std_err", "mean_k", "capped", "seed"}, {}};
    summary.add_row({config.power.attacker(), config.z, std::uint64_t{config.budget_surplus}, sim.trials, sim.wins,
                     sim.success_rate(), sim.std_error(), sim.k_histogram.mean(), sim.capped_count,
                     sim.master_seed});
    std::vector<Table> tables{std::move(summary)};

    if (f.histogram) {
        Table hist{"k_histogram", {"k", "count", "frequency"}, {}};
        for (const auto& [k, count] : sim.k_histogram.counts()) {
            hist.add_row({k, count, sim.k_histogram.frequency(k)});
        }
        tables.push_back(std::move(hist));
    }
    return tables;
}

std::vector<Table> cmd_validate(const ValidateFlags& f)
{
    SweepGrid grid;
    grid.q_values = f.q;
    grid.z_values = f.z;
    grid.variant = parse_variant(f.variant);
    grid.budget_surplus = f.surplus;
    grid.trials = f.trials;
    grid.master_seed = f.seed;
    const ParallelOptions parallel{f.threads};

    const auto rows = run_validation(grid, parallel);
    Table validation{"validation", {"q", "z", "model", "sim", "sim_std_err", "abs_error", "rel_error", "trials"}, {}};
    for (const auto& row : rows) {
        validation.add_row({row.q, row.z, row.model_prob, row.sim_prob, row.sim_std_err, row.abs_error,
                            row.rel_error ? Cell{*row.rel_error} : Cell{}, row.trials});
    }
    std::vector<Table> tables{std::move(validation)};
    if (!f.attribution) return tables;

    Table hybrid{"hybrid",
                 {"q", "z", "poisson_model", "hybrid_model", "sim", "sim_std_err", "poisson_abs_error",
                  "hybrid_abs_error"},
                 {}};
    Table catch_up{"catch_up", {"q", "z", "k", "deficit", "budget", "model", "sim", "std_err", "sigmas"}, {}};
    Table mean_k{"mean_k", {"q", "z", "lambda", "mean_k", "std_err", "sigmas", "variance"}, {}};
    Table k_pmf{"k_pmf", {"q", "z", "k", "poisson", "empirical"}, {}};
    Table verdicts{"verdicts", {"q", "z", "component", "observed", "expected", "std_err", "sigmas", "outlier"}, {}};

    for (const AttributionReport& r : run_attribution(grid, parallel)) {
        const HybridCheck& h = r.hybrid;
        hybrid.add_row({r.q, r.z, h.poisson_model, h.hybrid_model, h.sim, h.std_error(),
                        std::fabs(h.poisson_model - h.sim), std::fabs(h.hybrid_model - h.sim)});
        for (const auto& c : r.catch_up) {
            catch_up.add_row({r.q, r.z, c.k, c.deficit, c.budget, c.model, c.sim.rate(), c.std_error(), c.sigmas()});
        }
        mean_k.add_row({r.q, r.z, r.mean_k.lambda, r.mean_k.mean, r.mean_k.std_error, r.mean_k.sigmas(),
                        r.mean_k.variance});
        for (const auto& p : r.pmf.rows) k_pmf.add_row({r.q, r.z, p.k, p.poisson, p.empirical});
        for (const auto& v : summarize(r)) {
            verdicts.add_row({r.q, r.z, v.component, v.observed, v.expected, v.std_error, v.sigmas, v.outlier});
        }
    }
    tables.push_back(std::move(hybrid));
    tables.push_back(std::move(catch_up));
    tables.push_back(std::move(mean_k));
    tables.push_back(std::move(k_pmf));
    tables.push_back(std::move(verdicts));
    return tables;
}

}  // namespace

std::optional<std::uint64_t> seed_from_env(const char* value)
{
    if (value == nullptr) return kDefaultSeed;
    const std::string_view text(value);
    std::uint64_t seed = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
    return seed;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, std::uint64_t default_seed)
{
    CLI::App app{"Double-spend race calculator and simulator", "dsrace"};
    app.require_subcommand(1);

    CommonFlags common;
    ProbFlags prob;
    MinZFlags min_z;
    SimulateFlags simulate;
    ValidateFlags validate;
    simulate.seed = default_seed;
    validate.seed = default_seed;

    std::function<std::vector<Table>()> action;
    std::string command;

    auto* p = app.add_subcommand("prob", "Attack success probability at depth z");
    p->add_option("--q", prob.q, "Attacker share of hash power, in (0,1)")->required();
    p->add_option("--z", prob.z, "Confirmations")->required();
    p->add_option("--variant", prob.variant, "original, corrected or budgeted")->capture_default_str();
    p->add_option("--surplus", prob.surplus, "Budget surplus for the budgeted variant")->capture_default_str();
    p->add_flag("--summands", prob.summands, "Also emit the per-k summands");
    add_common(*p, common);
    p->callback([&] { command = "prob"; action = [&] { return cmd_prob(prob); }; });

    auto* m = app.add_subcommand("min-z", "Smallest z with success probability at or below each target");
    auto* q_list = m->add_option("--q", min_z.q, "Attacker shares")->delimiter(',');
    auto* q_range = m->add_option("--q-range", min_z.q_range, "start:stop:step, inclusive");
    q_list->excludes(q_range);
    m->add_option("--target", min_z.targets, "Target probabilities in (0,1)")->delimiter(',')->capture_default_str();
    m->add_option("--variant", min_z.variant, "original, corrected or budgeted")->capture_default_str();
    m->add_option("--surplus", min_z.surplus, "Budget surplus for the budgeted variant")->capture_default_str();
    m->add_option("--search-cap", min_z.search_cap, "Largest z tried before reporting inf")->capture_default_str();
    add_common(*m, common);
    m->callback([&] { command = "min-z"; action = [&] { return cmd_min_z(min_z); }; });

    auto* s = app.add_subcommand("simulate", "Monte Carlo race at one (q, z)");
    s->add_option("--q", simulate.q, "Attacker share of hash power, in (0,1)")->required();
    s->add_option("--z", simulate.z, "Confirmations")->required();
    s->add_option("--surplus", simulate.surplus, "Blocks of deficit the attacker tolerates beyond z")
        ->capture_default_str();
    s->add_option("--trials", simulate.trials, "Number of races")->capture_default_str();
    s->add_option("--seed", simulate.seed, "Master seed")->capture_default_str();
    s->add_option("--max-blocks", simulate.max_blocks, "Per-trial block cap")->capture_default_str();
    s->add_flag("--histogram", simulate.histogram, "Also emit the k histogram");
    s->add_option("--threads", simulate.threads, "Worker threads, 0 for all cores")->capture_default_str();
    add_common(*s, common);
    s->callback([&] { command = "simulate"; action = [&] { return cmd_simulate(simulate); }; });

    auto* v = app.add_subcommand("validate", "Model against simulation over a (q, z) grid");
    v->add_option("--q", validate.q, "Attacker shares, ascending")->delimiter(',')->capture_default_str();
    v->add_option("--z", validate.z, "Confirmations, ascending")->delimiter(',')->capture_default_str();
    v->add_option("--variant", validate.variant, "Model variant")->capture_default_str();
    v->add_option("--surplus", validate.surplus, "Budget surplus")->capture_default_str();
    v->add_option("--trials", validate.trials, "Races per cell")->capture_default_str();
    v->add_option("--seed", validate.seed, "Master seed")->capture_default_str();
    v->add_option("--threads", validate.threads, "Worker threads, 0 for all cores")->capture_default_str();
    v->add_flag("--attribution", validate.attribution, "Also emit the component attribution tables");
    add_common(*v, common);
    v->callback([&] { command = "validate"; action = [&] { return cmd_validate(validate); }; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
            app.exit(e, out, err);
            return kExitOk;
        }
        err << "dsrace: error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        const Format format = parse_format(common.format);
        // Render fully before touching the destination so a failure leaves no
        // partial output behind.
        std::ostringstream buffer;
        write_tables(buffer, format, command, action());
        if (common.out_path.empty()) {
            out << buffer.str();
            out.flush();
        } else {
            std::ofstream file(common.out_path, std::ios::binary);
            if (!file) throw std::invalid_argument("cannot open output file '" + common.out_path + "'");
            file << buffer.str();
            if (!file.flush()) throw std::runtime_error("failed writing '" + common.out_path + "'");
        }
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        err << "dsrace: error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "dsrace: internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}

}  // namespace dsrace::cli
