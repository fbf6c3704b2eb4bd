#include "driftlab/partition.hpp"

#include <algorithm>
#include <cmath>

#include "driftlab/errors.hpp"

namespace driftlab {

std::size_t FitnessPartition::part_of(const BitString& x) const {
    if (x.size() != n) throw ValidationError("part_of: bit string length differs from partition size");
    const std::size_t top = x.leftmost_one();
    if (top == 0) return 0;
    const auto it = std::upper_bound(jumps.begin(), jumps.end(), top);
    return static_cast<std::size_t>(it - jumps.begin()) + 1;
}

std::vector<std::size_t> find_jumps(const DriftWeights& weights, const BlockStructure& structure, std::size_t n) {
    if (weights.n() != n || structure.n != n) throw ValidationError("find_jumps: size mismatch");
    const Real n_squared = static_cast<Real>(n) * static_cast<Real>(n);
    std::vector<std::size_t> jumps;
    for (std::size_t i = 2; i <= n; ++i) {
        if (structure.blocks[structure.block_of(i)].regime != Regime::copy) continue;
        if (weights.w(i) > n_squared * weights.w(i - 1)) jumps.push_back(i);
    }
    return jumps;
}

FitnessPartition build_partition(const std::vector<std::size_t>& jumps, std::size_t n, double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0)) throw ValidationError("build_partition: gamma must lie in (0, 1)");
    FitnessPartition p;
    p.n = n;
    p.jumps = jumps;
    p.k_bound = 6 * static_cast<std::size_t>(std::ceil(1.0 / gamma)) + 1;
    std::size_t start = 1;
    for (std::size_t jump : jumps) {
        if (jump <= start || jump > n) throw ValidationError("build_partition: jumps must be increasing within 2..n");
        p.parts.push_back({start, jump - 1});
        start = jump;
    }
    p.parts.push_back({start, n});
    return p;
}

}  // namespace driftlab
