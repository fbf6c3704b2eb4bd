#pragma once

/// @file construction.hpp
/// @brief One-call construction of Phi_f and an independent invariant audit.

#include <string>
#include <vector>

#include "driftlab/blocks.hpp"
#include "driftlab/drift_params.hpp"
#include "driftlab/objective.hpp"
#include "driftlab/partition.hpp"
#include "driftlab/weights.hpp"

namespace driftlab {

struct Construction {
    BlockStructure structure;
    DriftWeights weights;
    FitnessPartition partition;
    /// Structure warnings plus a below-n0 note when n < params.n0.
    std::vector<std::string> warnings;
};

[[nodiscard]] Construction construct(const LinearObjective& f, const DriftParams& params,
                                     MergeOrder order = MergeOrder::leftmost_first);

/// Re-checks every structural invariant of `c` against `f` from first
/// principles (tiling, threshold minimality, long-block separation, regime
/// rule, n^4 block ratio, weight formulas and monotonicity, jump
/// completeness and count, fitness separation, part potential chain).
/// Returns one message per violated invariant; empty means conformant.
[[nodiscard]] std::vector<std::string> construction_violations(const LinearObjective& f, const Construction& c);

}  // namespace driftlab
