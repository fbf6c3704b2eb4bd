#pragma once

/// @file blocks.hpp
/// @brief Miniblock split, block pairing/merging and regime labels.
///
/// Intervals are inclusive position ranges [right, left] with
/// right <= left; "right" is the low (less significant) end, matching the
/// x_n ... x_1 display order. Consecutive miniblocks, and consecutive blocks,
/// share exactly one position.

#include <cstddef>
#include <string>
#include <vector>

#include "driftlab/objective.hpp"

namespace driftlab {

struct Interval {
    std::size_t right = 1;  ///< r, lowest position
    std::size_t left = 1;   ///< l, highest position

    [[nodiscard]] std::size_t length() const noexcept { return left - right + 1; }
    [[nodiscard]] bool contains(std::size_t i) const noexcept { return right <= i && i <= left; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

struct Miniblock {
    Interval span;
    /// Closed because a_left / a_right reached n^2 (false only for the final,
    /// unterminated miniblock).
    bool closed_by_threshold = false;
    friend bool operator==(const Miniblock&, const Miniblock&) = default;
};

enum class Regime { copy, damped };

[[nodiscard]] const char* to_string(Regime regime) noexcept;

struct Block {
    Interval span;
    bool is_long = false;
    Regime regime = Regime::damped;
    /// Number of pairing-stage blocks this block was merged from (1 if none).
    std::size_t merged_from = 1;
    friend bool operator==(const Block&, const Block&) = default;
};

struct MergeEvent {
    Interval left_long;
    Interval right_long;
    std::size_t absorbed_short = 0;
    Interval result;
};

enum class MergeOrder { leftmost_first, rightmost_first };

struct BlockStructure {
    std::size_t n = 0;
    double gamma = 0.5;
    /// Length at or above which a pairing-stage block is long: max(gamma n, 2).
    double long_threshold = 2.0;
    std::vector<Miniblock> miniblocks;
    /// Ordered from position 1 upward; blocks.back() is the leftmost block.
    std::vector<Block> blocks;
    std::vector<MergeEvent> merge_log;
    std::vector<std::string> warnings;

    /// Index of the block whose weight formula defines position i: the block
    /// with right < i <= left, or block 0 for i = 1.
    [[nodiscard]] std::size_t block_of(std::size_t i) const;

    [[nodiscard]] bool is_leftmost(std::size_t block_index) const noexcept {
        return block_index + 1 == blocks.size();
    }
};

/// Left-to-right scan closing a miniblock at the minimal i with a_i/a_j >= n^2.
[[nodiscard]] std::vector<Miniblock> build_miniblocks(const LinearObjective& f);

/// Pair miniblocks from position 1 upward (a leftover leftmost miniblock
/// stands alone), mark long blocks, and merge long blocks separated by at
/// most two short blocks until every pair has at least three between them.
[[nodiscard]] BlockStructure build_blocks(const std::vector<Miniblock>& miniblocks, double gamma, std::size_t n,
                                          MergeOrder order = MergeOrder::leftmost_first);

/// Copy regime for long blocks and blocks immediately left of a long block.
[[nodiscard]] BlockStructure assign_regimes(BlockStructure structure);

}  // namespace driftlab
