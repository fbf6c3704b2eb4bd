#include "driftlab/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "driftlab/construction.hpp"
#include "driftlab/errors.hpp"
#include "driftlab/feasibility.hpp"
#include "driftlab/parallel.hpp"
#include "driftlab/rng.hpp"
#include "driftlab/stats.hpp"

namespace driftlab {

namespace {

double n_log_n(std::size_t n) {
    const double x = static_cast<double>(n);
    return x * std::log(x);
}

void check_c(double c) {
    if (!(c > 0.0) || !std::isfinite(c)) throw ValidationError("c must be positive and finite");
}

LinearObjective cell_objective(const FamilySpec& spec, std::size_t n, std::uint64_t cell_seed) {
    return generate_family(spec, n, derive_seed(cell_seed, family_stream));
}

}  // namespace

CellSummary summarize_runs(std::span<const RunRecord> runs, std::size_t n) {
    if (runs.empty()) throw ValidationError("summarize_runs: no runs");
    std::vector<double> t;
    t.reserve(runs.size());
    CellSummary s;
    for (const auto& r : runs) {
        t.push_back(static_cast<double>(r.optimisation_time));
        if (r.truncated) ++s.truncated;
    }
    std::sort(t.begin(), t.end());
    s.mean = mean(t);
    s.median = quantile_sorted(t, 0.5);
    s.q10 = quantile_sorted(t, 0.10);
    s.q25 = quantile_sorted(t, 0.25);
    s.q75 = quantile_sorted(t, 0.75);
    s.q90 = quantile_sorted(t, 0.90);
    s.min = t.front();
    s.max = t.back();
    const double scale = n >= 2 ? n_log_n(n) : 1.0;
    s.median_normalized = s.median / scale;
    s.mean_normalized = s.mean / scale;
    s.inconclusive = static_cast<double>(s.truncated) > truncation_tolerance * static_cast<double>(runs.size());
    return s;
}

std::uint64_t scaling_max_iters(std::size_t n, double c) {
    const double factor = std::max(1.0, std::exp(c) / c);
    const auto cap = static_cast<std::uint64_t>(std::ceil(50.0 * factor * n_log_n(n)));
    return std::max(cap, default_max_iters(n));
}

std::uint64_t tail_max_iters(std::size_t n) {
    const auto cap = static_cast<std::uint64_t>(std::ceil(200.0 * n_log_n(n)));
    return std::max(cap, default_max_iters(n));
}

ExperimentResult scaling_experiment(const FamilySpec& spec, std::span<const double> c_list,
                                    std::span<const std::size_t> n_grid, const ScalingOptions& options) {
    if (options.reps < 30) throw ValidationError("scaling: reps must be >= 30");
    if (c_list.empty()) throw ValidationError("scaling: c list is empty");
    if (n_grid.empty()) throw ValidationError("scaling: n grid is empty");
    for (std::size_t k = 1; k < n_grid.size(); ++k)
        if (n_grid[k] <= n_grid[k - 1]) throw ValidationError("scaling: n grid must be strictly increasing");
    if (!(options.plateau_tolerance >= 1.0)) throw ValidationError("scaling: plateau tolerance must be >= 1");
    if (options.max_iters && *options.max_iters == 0) throw ValidationError("scaling: max_iters must be >= 1");

    ExperimentResult result;
    result.family = to_string(spec.kind);
    result.master_seed = options.master_seed;
    result.reps = options.reps;
    result.plateau_tolerance = options.plateau_tolerance;

    std::vector<LinearObjective> objectives;
    std::vector<MutationParams> mutation;
    for (std::size_t ci = 0; ci < c_list.size(); ++ci) {
        check_c(c_list[ci]);
        for (std::size_t ni = 0; ni < n_grid.size(); ++ni) {
            ExperimentCell cell;
            cell.index = ci * n_grid.size() + ni;
            cell.family = result.family;
            cell.n = n_grid[ni];
            cell.c = c_list[ci];
            cell.cell_seed = derive_seed(options.master_seed, cell.index);
            cell.max_iters = options.max_iters.value_or(scaling_max_iters(cell.n, cell.c));
            cell.runs.resize(options.reps);
            mutation.emplace_back(cell.c, cell.n);
            objectives.push_back(cell_objective(spec, cell.n, cell.cell_seed));
            result.cells.push_back(std::move(cell));
        }
    }

    // Longest cells first so a shared pool stays busy to the end.
    std::vector<std::size_t> order(result.cells.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return result.cells[x].max_iters > result.cells[y].max_iters;
    });
    const std::size_t reps = options.reps;
    parallel_for(order.size() * reps, options.threads, [&](std::size_t task) {
        const std::size_t k = order[task / reps];
        const std::size_t r = task % reps;
        ExperimentCell& cell = result.cells[k];
        cell.runs[r] = run_ea(objectives[k], mutation[k], derive_seed(cell.cell_seed, r), cell.max_iters);
    });

    for (auto& cell : result.cells) {
        cell.summary = summarize_runs(cell.runs, cell.n);
        result.truncated += cell.summary.truncated;
        result.inconclusive = result.inconclusive || cell.summary.inconclusive;
    }
    for (std::size_t ci = 0; ci < c_list.size(); ++ci) {
        Plateau p;
        p.family = result.family;
        p.c = c_list[ci];
        p.median_increasing = true;
        double lo = 0, hi = 0;
        for (std::size_t ni = 0; ni < n_grid.size(); ++ni) {
            const auto& s = result.cells[ci * n_grid.size() + ni].summary;
            if (ni == 0) {
                lo = hi = s.median_normalized;
            } else {
                lo = std::min(lo, s.median_normalized);
                hi = std::max(hi, s.median_normalized);
                if (!(s.median > result.cells[ci * n_grid.size() + ni - 1].summary.median))
                    p.median_increasing = false;
            }
        }
        p.min_median_normalized = lo;
        p.max_median_normalized = hi;
        p.ratio = lo > 0 ? hi / lo : 0.0;
        p.within_tolerance = lo > 0 && p.ratio <= options.plateau_tolerance;
        result.plateaus.push_back(p);
    }
    return result;
}

namespace {

double exhaustive_nu(const LinearObjective& f, double c, double epsilon) {
    const Construction con = construct(f, default_params(c, epsilon));
    FeasibilityOptions opts;
    opts.mode = VerificationMode::exhaustive;
    const FeasibilityReport report = verify_feasibility(f, con.weights, con.partition, c, opts);
    if (!(report.min_drift_factor > 0))
        throw ValidationError("tail: exhaustive verification found no positive drift, so nu is undefined");
    return static_cast<double>(report.implied_nu);
}

}  // namespace

TailResult tail_experiment(const FamilySpec& spec, std::size_t n, double c, const TailOptions& options) {
    check_c(c);
    if (options.reps == 0) throw ValidationError("tail: reps must be >= 1");
    if (options.lambdas.empty()) throw ValidationError("tail: lambda grid is empty");
    for (double l : options.lambdas)
        if (!(l > 0.0) || !std::isfinite(l)) throw ValidationError("tail: every lambda must be positive");
    if (options.nu && !(*options.nu >= 1.0)) throw ValidationError("tail: nu must be >= 1");

    TailResult result;
    result.family = to_string(spec.kind);
    result.n = n;
    result.c = c;
    result.reps = options.reps;
    result.master_seed = options.master_seed;

    const std::uint64_t cell_seed = derive_seed(options.master_seed, 0);
    const LinearObjective f = cell_objective(spec, n, cell_seed);
    const MutationParams mutation(c, n);
    const Construction con = construct(f, default_params(c, options.epsilon));
    result.log_phi_max = static_cast<double>(std::log(con.weights.total()));

    if (options.nu) {
        result.nu = *options.nu;
        result.nu_source = "supplied";
    } else if (n <= exhaustive_state_cap) {
        result.nu = exhaustive_nu(f, c, options.epsilon);
        result.nu_source = "exhaustive";
    } else {
        if (spec.kind == FamilyKind::explicit_list)
            throw ValidationError("tail: explicit objectives with n > 12 need a supplied nu");
        const std::size_t base = exhaustive_state_cap;
        const LinearObjective small = cell_objective(spec, base, cell_seed);
        result.nu = exhaustive_nu(small, c, options.epsilon) / static_cast<double>(base) * static_cast<double>(n);
        result.nu_source = "extrapolated";
    }

    result.max_iters = tail_max_iters(n);
    std::vector<RunRecord> runs(options.reps);
    parallel_for(runs.size(), options.threads, [&](std::size_t r) {
        runs[r] = run_ea(f, mutation, derive_seed(cell_seed, r), result.max_iters);
    });
    for (const auto& r : runs)
        if (r.truncated) ++result.truncated;

    result.all_within = true;
    const double reps = static_cast<double>(options.reps);
    for (double lambda : options.lambdas) {
        TailRow row;
        row.lambda = lambda;
        row.threshold = static_cast<std::uint64_t>(std::ceil(result.nu * (result.log_phi_max + lambda)));
        for (const auto& r : runs)
            if (r.truncated || r.optimisation_time > row.threshold) ++row.exceedances;
        row.empirical = static_cast<double>(row.exceedances) / reps;
        row.bound = std::exp(-lambda);
        row.sigma = std::sqrt(row.bound * (1.0 - row.bound) / reps);
        row.within = row.empirical <= row.bound + 3.0 * row.sigma;
        result.all_within = result.all_within && row.within;
        result.rows.push_back(row);
    }
    return result;
}

LowerBoundResult lower_bound_experiment(const FamilySpec& spec, std::size_t n, double c,
                                        const LowerBoundOptions& options) {
    check_c(c);
    if (options.reps < 100) throw ValidationError("lower-bound: reps must be >= 100");
    if (n < 2) throw ValidationError("lower-bound: n must be >= 2");

    LowerBoundResult result;
    result.family = to_string(spec.kind);
    result.n = n;
    result.c = c;
    result.reps = options.reps;
    result.master_seed = options.master_seed;
    result.threshold = n_log_n(n) / (2.0 * (std::max(1.0, c) + 1.0));
    result.budget = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::floor(result.threshold)));
    result.informational = n < lower_bound_min_n;

    const std::uint64_t cell_seed = derive_seed(options.master_seed, 0);
    const LinearObjective f = cell_objective(spec, n, cell_seed);
    const MutationParams mutation(c, n);
    std::vector<char> success(options.reps, 0);
    parallel_for(options.reps, options.threads, [&](std::size_t r) {
        success[r] = run_ea(f, mutation, derive_seed(cell_seed, r), result.budget).truncated ? 0 : 1;
    });
    result.successes = static_cast<std::size_t>(std::count(success.begin(), success.end(), 1));
    result.success_rate = static_cast<double>(result.successes) / static_cast<double>(options.reps);
    result.consistency_bound = 3.0 / static_cast<double>(options.reps);
    result.consistent = result.success_rate <= result.consistency_bound;
    return result;
}

}  // namespace driftlab
