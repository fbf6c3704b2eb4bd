#pragma once

/// @file lemmas.hpp
/// @brief Numeric audit of the weight-sum inequalities behind the drift bound.
///
/// Every check is evaluated in log space. slack = ln(rhs) - ln(lhs) for the
/// inequalities and -|ln(lhs) - ln(rhs)| for the damped-block equality; a
/// check holds when slack >= -lemma_tolerance.
///
///   geometric_run     damped run B_0..B_k, t = l_{B_0} - r_{B_k}:
///                     sum_{run} w <= K^{tc/n} w_{r_{B_k}} (n/(c ln K) + 1)
///   damped_equality   damped non-leftmost block: w_l = K^{tc/n} w_r
///   run_to_left_end   damped run with B_0 not leftmost:
///                     sum_{run} w <= w_{l_{B_0}} (n/(c ln K) + 1)
///   short_block_tail  short non-leftmost block B:
///                     sum_{j <= l_B} w_j <= w_{l_B} (n/(c ln K) + 1 + gamma n + n^{-3})
///
/// The last three rely on a_{l_B}/a_{r_B} >= n^4 >= K^c, so they are only
/// applicable when n^4 >= K^c (and K > 1 for all four).

#include <cstddef>
#include <string>
#include <vector>

#include "driftlab/blocks.hpp"
#include "driftlab/drift_params.hpp"
#include "driftlab/partition.hpp"
#include "driftlab/weights.hpp"

namespace driftlab {

inline constexpr double lemma_tolerance = 1e-9;

enum class WeightLemma { geometric_run, damped_equality, run_to_left_end, short_block_tail };

[[nodiscard]] const char* to_string(WeightLemma lemma) noexcept;

struct LemmaCheck {
    WeightLemma lemma = WeightLemma::geometric_run;
    /// Position range the check covers.
    Interval span;
    double log_lhs = 0;
    double log_rhs = 0;
    double slack = 0;
    bool holds = true;
};

struct LemmaSummary {
    WeightLemma lemma = WeightLemma::geometric_run;
    std::size_t applicable = 0;
    std::size_t failed = 0;
    /// Smallest slack over applicable checks (0 when none).
    double min_slack = 0;
};

struct LemmaReport {
    /// n^4 >= K^c and K > 1.
    bool large_n_precondition = false;
    /// One entry per lemma, in enum order.
    std::vector<LemmaSummary> summary;
    /// Failed checks always; every check when recording was requested.
    std::vector<LemmaCheck> checks;
    [[nodiscard]] bool all_hold() const noexcept;
    [[nodiscard]] std::size_t applicable() const noexcept;
};

/// Damped runs are checked over every consecutive sub-run of blocks.
[[nodiscard]] LemmaReport check_weight_lemmas(const DriftWeights& weights, const BlockStructure& structure,
                                              const DriftParams& params, bool record_all = false);

struct PartSpread {
    Interval part;
    double log_min = 0;
    double log_max = 0;
    /// (log_max - log_min) / ln n.
    double exponent = 0;
    /// max Phi(M_j) <= n w_{i_j - 1}.
    bool chain_holds = true;
};

/// Per-part potential spread; the construction keeps each spread O(log n).
[[nodiscard]] std::vector<PartSpread> check_partition_polynomiality(const DriftWeights& weights,
                                                                    const FitnessPartition& partition);

}  // namespace driftlab
