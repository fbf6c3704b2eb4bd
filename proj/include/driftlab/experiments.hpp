#pragma once

/// @file experiments.hpp
/// @brief Runtime scaling, tail and lower-bound experiments.
///
/// Seeds: cell k of an experiment uses cell_seed = derive_seed(master, k);
/// run r in that cell uses derive_seed(cell_seed, r) and random families are
/// drawn with derive_seed(cell_seed, family_stream). Runs are spread over
/// workers by index and summarized after sorting, so results do not depend
/// on the worker count.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "driftlab/ea.hpp"
#include "driftlab/families.hpp"

namespace driftlab {

inline constexpr std::uint64_t family_stream = 0xFA4D11E5ULL;
/// Largest acceptable share of truncated runs in a cell.
inline constexpr double truncation_tolerance = 0.01;
inline constexpr double default_plateau_tolerance = 2.0;
/// Lower-bound results at smaller n are informational.
inline constexpr std::size_t lower_bound_min_n = 1000;

struct CellSummary {
    double mean = 0;
    double median = 0;
    double q10 = 0;
    double q25 = 0;
    double q75 = 0;
    double q90 = 0;
    double min = 0;
    double max = 0;
    /// median / (n ln n).
    double median_normalized = 0;
    double mean_normalized = 0;
    std::size_t truncated = 0;
    bool inconclusive = false;
};

/// Quantiles over optimisation times (truncated runs enter with their cap).
[[nodiscard]] CellSummary summarize_runs(std::span<const RunRecord> runs, std::size_t n);

struct ExperimentCell {
    std::size_t index = 0;
    std::string family;
    std::size_t n = 0;
    double c = 0;
    std::uint64_t cell_seed = 0;
    std::uint64_t max_iters = 0;
    std::vector<RunRecord> runs;
    CellSummary summary;
};

struct Plateau {
    std::string family;
    double c = 0;
    double min_median_normalized = 0;
    double max_median_normalized = 0;
    /// max / min of the normalized medians over the n-grid.
    double ratio = 0;
    bool within_tolerance = false;
    bool median_increasing = false;
};

struct ExperimentResult {
    std::string family;
    std::uint64_t master_seed = 0;
    std::size_t reps = 0;
    double plateau_tolerance = default_plateau_tolerance;
    std::vector<ExperimentCell> cells;
    /// One per c, in c_list order.
    std::vector<Plateau> plateaus;
    std::size_t truncated = 0;
    bool inconclusive = false;
};

struct ScalingOptions {
    std::size_t reps = 100;
    std::uint64_t master_seed = 1;
    std::size_t threads = 1;
    /// Default: ceil(50 max(1, e^c / c) n ln n).
    std::optional<std::uint64_t> max_iters;
    double plateau_tolerance = default_plateau_tolerance;
};

/// ceil(50 max(1, e^c / c) n ln n), at least default_max_iters(n).
[[nodiscard]] std::uint64_t scaling_max_iters(std::size_t n, double c);

/// Cells are ordered c-major: index = (position of c) * |n_grid| + (position of n).
/// Requires reps >= 30 and a strictly increasing n_grid.
[[nodiscard]] ExperimentResult scaling_experiment(const FamilySpec& spec, std::span<const double> c_list,
                                                  std::span<const std::size_t> n_grid, const ScalingOptions& options);

struct TailRow {
    double lambda = 0;
    /// ceil(nu (ln Phi_max + lambda)).
    std::uint64_t threshold = 0;
    std::size_t exceedances = 0;
    double empirical = 0;
    /// e^{-lambda}.
    double bound = 0;
    /// sqrt(bound (1 - bound) / reps).
    double sigma = 0;
    bool within = false;
};

struct TailResult {
    std::string family;
    std::size_t n = 0;
    double c = 0;
    std::size_t reps = 0;
    std::uint64_t master_seed = 0;
    double nu = 0;
    /// "supplied", "exhaustive" or "extrapolated" (alpha n with alpha from n = 12).
    std::string nu_source;
    double log_phi_max = 0;
    std::uint64_t max_iters = 0;
    std::size_t truncated = 0;
    std::vector<TailRow> rows;
    bool all_within = false;
};

struct TailOptions {
    std::size_t reps = 10000;
    std::vector<double> lambdas = {1.0, 2.0, 3.0};
    std::uint64_t master_seed = 1;
    std::size_t threads = 1;
    std::optional<double> nu;
    double epsilon = 0.5;
};

/// 200 n ln n, at least default_max_iters(n).
[[nodiscard]] std::uint64_t tail_max_iters(std::size_t n);

/// Exceedance frequency of the multiplicative-drift tail threshold. Without
/// a supplied nu it is measured by exhaustive verification at n (n <= 12)
/// or extrapolated linearly from n = 12.
[[nodiscard]] TailResult tail_experiment(const FamilySpec& spec, std::size_t n, double c, const TailOptions& options);

struct LowerBoundResult {
    std::string family;
    std::size_t n = 0;
    double c = 0;
    std::size_t reps = 0;
    std::uint64_t master_seed = 0;
    /// n ln n / (2 (max(1, c) + 1)).
    double threshold = 0;
    /// floor(threshold), the evaluation budget per run.
    std::uint64_t budget = 0;
    std::size_t successes = 0;
    double success_rate = 0;
    /// 3 / reps.
    double consistency_bound = 0;
    bool consistent = false;
    /// n < lower_bound_min_n.
    bool informational = false;
};

struct LowerBoundOptions {
    std::size_t reps = 200;
    std::uint64_t master_seed = 1;
    std::size_t threads = 1;
};

/// Requires reps >= 100.
[[nodiscard]] LowerBoundResult lower_bound_experiment(const FamilySpec& spec, std::size_t n, double c,
                                                      const LowerBoundOptions& options);

}  // namespace driftlab
