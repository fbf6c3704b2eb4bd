#include "driftlab/blocks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "driftlab/errors.hpp"

namespace driftlab {

const char* to_string(Regime regime) noexcept { return regime == Regime::copy ? "copy" : "damped"; }

std::size_t BlockStructure::block_of(std::size_t i) const {
    if (i == 0 || i > n) throw std::out_of_range("block_of: position out of range");
    if (i == 1) return 0;
    const auto it = std::lower_bound(blocks.begin(), blocks.end(), i,
                                     [](const Block& b, std::size_t pos) { return b.span.left < pos; });
    return static_cast<std::size_t>(it - blocks.begin());
}

std::vector<Miniblock> build_miniblocks(const LinearObjective& f) {
    const std::size_t n = f.n();
    const Real n_squared = static_cast<Real>(n) * static_cast<Real>(n);
    std::vector<Miniblock> out;
    std::size_t j = 1;
    for (;;) {
        if (j == n || f.a(n) < n_squared * f.a(j)) {
            out.push_back({{j, n}, false});
            break;
        }
        std::size_t i = j + 1;
        while (f.a(i) < n_squared * f.a(j)) ++i;
        out.push_back({{j, i}, true});
        if (i == n) break;
        j = i;
    }
    return out;
}

namespace {

struct MergeCandidate {
    std::size_t lower;  // index of the right (lower) long block
    std::size_t upper;  // index of the left (upper) long block
};

std::vector<MergeCandidate> merge_candidates(const std::vector<Block>& blocks) {
    std::vector<MergeCandidate> out;
    std::size_t previous_long = blocks.size();
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        if (!blocks[k].is_long) continue;
        if (previous_long != blocks.size() && k - previous_long - 1 <= 2) out.push_back({previous_long, k});
        previous_long = k;
    }
    return out;
}

}  // namespace

BlockStructure build_blocks(const std::vector<Miniblock>& miniblocks, double gamma, std::size_t n, MergeOrder order) {
    if (miniblocks.empty()) throw ValidationError("build_blocks: empty miniblock list");
    if (!(gamma > 0.0 && gamma < 1.0)) throw ValidationError("build_blocks: gamma must lie in (0, 1)");

    BlockStructure s;
    s.n = n;
    s.gamma = gamma;
    s.miniblocks = miniblocks;
    const double gamma_n = gamma * static_cast<double>(n);
    s.long_threshold = std::max(gamma_n, 2.0);
    if (gamma_n < 1.0) {
        std::ostringstream msg;
        msg << "gamma n = " << gamma_n << " < 1: long-block threshold clamped to 2 (construction targets n >= n0)";
        s.warnings.push_back(msg.str());
    }

    for (std::size_t k = 0; k < miniblocks.size(); k += 2) {
        Block b;
        b.span.right = miniblocks[k].span.right;
        b.span.left = k + 1 < miniblocks.size() ? miniblocks[k + 1].span.left : miniblocks[k].span.left;
        b.is_long = static_cast<double>(b.span.length()) >= s.long_threshold;
        s.blocks.push_back(b);
    }

    for (;;) {
        const auto candidates = merge_candidates(s.blocks);
        if (candidates.empty()) break;
        const MergeCandidate pick = order == MergeOrder::leftmost_first ? candidates.back() : candidates.front();

        Block merged;
        merged.span = {s.blocks[pick.lower].span.right, s.blocks[pick.upper].span.left};
        merged.is_long = true;
        merged.merged_from = 0;
        for (std::size_t k = pick.lower; k <= pick.upper; ++k) merged.merged_from += s.blocks[k].merged_from;
        s.merge_log.push_back({s.blocks[pick.upper].span, s.blocks[pick.lower].span, pick.upper - pick.lower - 1,
                               merged.span});

        s.blocks.erase(s.blocks.begin() + static_cast<std::ptrdiff_t>(pick.lower) + 1,
                       s.blocks.begin() + static_cast<std::ptrdiff_t>(pick.upper) + 1);
        s.blocks[pick.lower] = merged;
    }
    return s;
}

BlockStructure assign_regimes(BlockStructure structure) {
    auto& blocks = structure.blocks;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        const bool left_of_long = k > 0 && blocks[k - 1].is_long;
        blocks[k].regime = blocks[k].is_long || left_of_long ? Regime::copy : Regime::damped;
    }
    return structure;
}

}  // namespace driftlab
