#pragma once

/// @file bounds.hpp
/// @brief Runtime bounds from multiplicative drift.

#include <cstdint>
#include <optional>
#include <vector>

#include "driftlab/partition.hpp"
#include "driftlab/weights.hpp"

namespace driftlab {

struct TheoremBound {
    /// nu (ln Phi_max + 1).
    double expected_bound = 0;
    /// ceil(nu (ln Phi_max + lambda)); set only when lambda was given.
    std::optional<std::uint64_t> tail_threshold;
    /// e^{-lambda}; set only when lambda was given.
    std::optional<double> tail_prob_bound;
};

/// Requires nu >= 1, phi_max >= 1 and lambda > 0 when present.
[[nodiscard]] TheoremBound theorem_bound(double nu, double phi_max, std::optional<double> lambda = std::nullopt);

/// Same, with Phi_max given as its natural logarithm (for potentials
/// outside double range).
[[nodiscard]] TheoremBound theorem_bound_log(double nu, double log_phi_max, std::optional<double> lambda = std::nullopt);

/// ln min Phi(M_j) and ln max Phi(M_j) for one part.
struct PartPotential {
    Interval part;
    /// ln w_{i_{j-1}}.
    double log_min = 0;
    /// ln sum_{i <= i_j - 1} w_i.
    double log_max = 0;
};

[[nodiscard]] std::vector<PartPotential> part_potentials(const DriftWeights& weights,
                                                         const FitnessPartition& partition);

struct PiecewiseBound {
    /// nu sum_j (ln max Phi(M_j) - ln min Phi(M_j) + 1).
    double expected_bound = 0;
    /// sum_j ceil(nu (ln max Phi(M_j) - ln min Phi(M_j) + lambda)).
    std::optional<std::uint64_t> tail_threshold_sum;
    /// k e^{-lambda} with k the number of non-empty parts.
    std::optional<double> tail_prob_bound;
    std::vector<PartPotential> parts;
};

[[nodiscard]] PiecewiseBound piecewise_bound(double nu, const DriftWeights& weights, const FitnessPartition& partition,
                                             std::optional<double> lambda = std::nullopt);

/// ceil(v), treating values within a relative 1e-12 above an integer as
/// that integer (so nu (ln e^2 + 3) with nu = 10 is 50, not 51).
[[nodiscard]] std::uint64_t ceil_tolerant(double v);

}  // namespace driftlab
