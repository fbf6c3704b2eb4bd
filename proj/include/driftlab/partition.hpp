#pragma once

#include <cstddef>
#include <vector>

#include "driftlab/bitstring.hpp"
#include "driftlab/blocks.hpp"
#include "driftlab/weights.hpp"

namespace driftlab {

/// Fitness-based partition induced by the jumps i_1 < ... < i_k'.
///
/// parts[j - 1] is N_j = {i_{j-1}, ..., i_j - 1} with sentinels i_0 = 1 and
/// i_{k'+1} = n + 1. M_j is the set of strings whose leftmost 1 lies in N_j,
/// and M_0 = {0}.
struct FitnessPartition {
    std::size_t n = 0;
    std::vector<std::size_t> jumps;
    std::vector<Interval> parts;
    /// 6 ceil(1/gamma) + 1.
    std::size_t k_bound = 0;

    /// j such that x lies in M_j.
    [[nodiscard]] std::size_t part_of(const BitString& x) const;
};

/// Positions i in 2..n whose weight is set in a copy regime with w_i / w_{i-1} > n^2.
[[nodiscard]] std::vector<std::size_t> find_jumps(const DriftWeights& weights, const BlockStructure& structure,
                                                  std::size_t n);

[[nodiscard]] FitnessPartition build_partition(const std::vector<std::size_t>& jumps, std::size_t n, double gamma);

}  // namespace driftlab
