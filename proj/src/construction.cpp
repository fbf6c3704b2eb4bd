#include "driftlab/construction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace driftlab {

Construction construct(const LinearObjective& f, const DriftParams& params, MergeOrder order) {
    BlockStructure structure = assign_regimes(build_blocks(build_miniblocks(f), params.gamma, f.n(), order));
    DriftWeights weights = build_weights(f, structure, params);
    FitnessPartition partition = build_partition(find_jumps(weights, structure, f.n()), f.n(), params.gamma);
    std::vector<std::string> warnings = structure.warnings;
    if (f.n() < params.n0) {
        std::ostringstream msg;
        msg << "n = " << f.n() << " is below n0 = " << params.n0 << "; drift guarantees are informational only";
        warnings.push_back(msg.str());
    }
    return {std::move(structure), std::move(weights), std::move(partition), std::move(warnings)};
}

namespace {

constexpr Real rel_tol = 1e-12L;

bool close(Real lhs, Real rhs) { return std::fabs(lhs - rhs) <= rel_tol * std::max(std::fabs(lhs), std::fabs(rhs)); }

class Audit {
public:
    template <typename... Args>
    void fail(Args&&... args) {
        std::ostringstream msg;
        (msg << ... << args);
        out.push_back(msg.str());
    }
    std::vector<std::string> out;
};

template <typename Span>
void check_tiling(Audit& audit, const char* what, const std::vector<Span>& items, std::size_t n, auto span_of) {
    if (items.empty()) {
        audit.fail(what, ": empty");
        return;
    }
    if (span_of(items.front()).right != 1) audit.fail(what, ": first does not start at position 1");
    if (span_of(items.back()).left != n) audit.fail(what, ": last does not end at position n");
    for (std::size_t k = 0; k < items.size(); ++k) {
        const Interval s = span_of(items[k]);
        if (s.right > s.left) audit.fail(what, " ", k, ": empty interval");
        if (k > 0 && span_of(items[k - 1]).left != s.right) audit.fail(what, " ", k, ": does not overlap predecessor in exactly one position");
    }
}

}  // namespace

std::vector<std::string> construction_violations(const LinearObjective& f, const Construction& c) {
    Audit audit;
    const std::size_t n = f.n();
    const Real n2 = static_cast<Real>(n) * static_cast<Real>(n);
    const Real n4 = n2 * n2;
    const auto& s = c.structure;
    const auto& w = c.weights;
    const auto& params = w.params();

    if (s.n != n || w.n() != n || c.partition.n != n) {
        audit.fail("size mismatch between objective and construction");
        return audit.out;
    }

    // Miniblocks.
    check_tiling(audit, "miniblock", s.miniblocks, n, [](const Miniblock& m) { return m.span; });
    for (std::size_t k = 0; k < s.miniblocks.size(); ++k) {
        const auto& m = s.miniblocks[k];
        const std::size_t j = m.span.right;
        const std::size_t i = m.span.left;
        const bool last = k + 1 == s.miniblocks.size();
        if (m.closed_by_threshold) {
            if (!(f.a(i) >= n2 * f.a(j))) audit.fail("miniblock ", k, ": a_i/a_j < n^2 at its closing position");
            if (i - 1 > j && !(f.a(i - 1) < n2 * f.a(j))) audit.fail("miniblock ", k, ": closing position is not minimal");
        } else {
            if (!last) audit.fail("miniblock ", k, ": interior miniblock not closed by threshold");
            if (n > 1 && !(f.a(n) < n2 * f.a(j))) audit.fail("miniblock ", k, ": final miniblock should have closed");
        }
    }

    // Blocks.
    check_tiling(audit, "block", s.blocks, n, [](const Block& b) { return b.span; });
    std::vector<std::size_t> boundaries;
    for (const auto& m : s.miniblocks) boundaries.push_back(m.span.right);
    boundaries.push_back(n);
    for (std::size_t k = 0; k < s.blocks.size(); ++k) {
        const auto& b = s.blocks[k];
        if (!std::binary_search(boundaries.begin(), boundaries.end(), b.span.right) ||
            !std::binary_search(boundaries.begin(), boundaries.end(), b.span.left))
            audit.fail("block ", k, ": boundary is not a miniblock boundary");
        if (b.is_long && static_cast<double>(b.span.length()) < s.gamma * static_cast<double>(n))
            audit.fail("block ", k, ": long block shorter than gamma n");
        if (!b.is_long && static_cast<double>(b.span.length()) >= s.long_threshold)
            audit.fail("block ", k, ": short block reaches the long threshold");
        const bool copy = b.is_long || (k > 0 && s.blocks[k - 1].is_long);
        if ((b.regime == Regime::copy) != copy) audit.fail("block ", k, ": regime label violates the copy rule");
        if (!s.is_leftmost(k) && !(f.a(b.span.left) >= n4 * f.a(b.span.right) * (1 - 1e-15L)))
            audit.fail("block ", k, ": a_l/a_r < n^4 for a non-leftmost block");
    }
    std::size_t previous_long = s.blocks.size();
    for (std::size_t k = 0; k < s.blocks.size(); ++k) {
        if (!s.blocks[k].is_long) continue;
        if (previous_long != s.blocks.size() && k - previous_long - 1 < 3)
            audit.fail("long blocks ", previous_long, " and ", k, ": fewer than three short blocks between them");
        previous_long = k;
    }

    // Weights.
    if (w.w(1) != 1) audit.fail("w_1 != 1");
    for (std::size_t i = 2; i <= n; ++i)
        if (w.w(i) < w.w(i - 1)) audit.fail("weights decrease at position ", i);
    const Real growth = static_cast<Real>(params.c) * static_cast<Real>(params.ln_K) / static_cast<Real>(n);
    for (const auto& b : s.blocks) {
        const std::size_t r = b.span.right;
        for (std::size_t i = r + 1; i <= b.span.left; ++i) {
            const Real ratio = f.a(i) / f.a(r);
            const Real expected = b.regime == Regime::copy
                                      ? w.w(r) * ratio
                                      : w.w(r) * std::min(std::exp(static_cast<Real>(i - r) * growth), ratio);
            if (!close(w.w(i), expected)) audit.fail("weight ", i, " does not follow its ", to_string(b.regime), " formula");
            if (w.w(i) > w.w(r) * ratio * (1 + rel_tol)) audit.fail("weight ", i, " exceeds its copy value");
        }
    }

    // Jumps and parts.
    const auto& p = c.partition;
    std::vector<std::size_t> expected_jumps;
    for (std::size_t i = 2; i <= n; ++i)
        if (s.blocks[s.block_of(i)].regime == Regime::copy && w.w(i) > n2 * w.w(i - 1)) expected_jumps.push_back(i);
    if (expected_jumps != p.jumps) audit.fail("jump list differs from the copy-regime ratio rule");
    if (p.jumps.size() + 1 > p.k_bound) audit.fail("jump count ", p.jumps.size(), " exceeds k_bound - 1");
    if (p.parts.size() != p.jumps.size() + 1) audit.fail("part count differs from jump count + 1");
    for (std::size_t j = 0; j < p.parts.size(); ++j) {
        const Interval part = p.parts[j];
        const std::size_t lo = j == 0 ? 1 : p.jumps[j - 1];
        const std::size_t hi = j < p.jumps.size() ? p.jumps[j] - 1 : n;
        if (part.right != lo || part.left != hi) audit.fail("part ", j + 1, " does not span between its jumps");
    }
    Real prefix_f = 0;
    Real prefix_w = 0;
    std::size_t jump_index = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        if (jump_index < p.jumps.size() && p.jumps[jump_index] == i) {
            if (!(f.a(i) > prefix_f)) audit.fail("jump ", i, ": f is not separated (a_i <= sum of lower coefficients)");
            // max Phi(M_j) = sum_{k < i} w_k <= n w_{i-1}
            if (prefix_w > static_cast<Real>(n) * w.w(i - 1) * (1 + rel_tol)) audit.fail("part ending at ", i - 1, ": max Phi exceeds n w_max");
            ++jump_index;
        }
        prefix_f += f.a(i);
        prefix_w += w.w(i);
    }
    return audit.out;
}

}  // namespace driftlab
