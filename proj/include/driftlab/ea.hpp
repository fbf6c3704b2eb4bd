#pragma once

/// @file ea.hpp
/// @brief The (1+1) EA with independent bit mutation, p_n = c/n.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "driftlab/bitstring.hpp"
#include "driftlab/objective.hpp"
#include "driftlab/rng.hpp"

namespace driftlab {

/// Mutation constant c and the derived rate p_n = c / n.
class MutationParams {
public:
    /// Throws ValidationError unless c > 0 and c / n <= 1.
    MutationParams(double c, std::size_t n);

    [[nodiscard]] double c() const noexcept { return c_; }
    [[nodiscard]] std::size_t n() const noexcept { return n_; }
    [[nodiscard]] double rate() const noexcept { return rate_; }

private:
    double c_;
    std::size_t n_;
    double rate_;
};

/// Flip every bit of `x` independently with probability p_n. Draws exactly
/// n uniforms from `rng`, one per position from 1 up to n.
template <UniformSource Rng>
[[nodiscard]] BitString mutate(const BitString& x, const MutationParams& params, Rng& rng) {
    BitString out = x;
    auto& bits = out.raw();
    const double p = params.rate();
    for (auto& b : bits)
        if (rng.uniform() < p) b ^= 1U;
    return out;
}

/// Samples the flip set of one independent-bit mutation without touching
/// every position: the number of flips K ~ Bin(n, p) is drawn by inversion
/// from a precomputed table and then K distinct positions are drawn
/// uniformly (Floyd). The resulting flip set has exactly the distribution of
/// per-bit mutation.
class FlipSampler {
public:
    explicit FlipSampler(const MutationParams& params);

    /// Fills `flips` with distinct 1-based positions.
    void sample(SplitMix64& rng, std::vector<std::uint32_t>& flips);

    [[nodiscard]] const std::vector<double>& cdf() const noexcept { return cdf_; }

private:
    std::size_t n_;
    std::vector<double> cdf_;
    std::vector<std::uint32_t> stamp_;
    std::uint32_t epoch_ = 0;
};

struct RunRecord {
    std::uint64_t seed = 0;
    /// Objective evaluations up to and including the first optimal one.
    std::uint64_t optimisation_time = 0;
    std::size_t initial_ones = 0;
    bool truncated = false;

    friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

/// ceil(50 n ln n), at least 50.
[[nodiscard]] std::uint64_t default_max_iters(std::size_t n);

/// One EA run from a uniformly random start. `max_iters` caps the number of
/// objective evaluations; hitting it sets `truncated`.
[[nodiscard]] RunRecord run_ea(const LinearObjective& f, const MutationParams& params, std::uint64_t seed,
                               std::optional<std::uint64_t> max_iters = std::nullopt);

/// As run_ea, but starting from `initial` instead of a random string.
/// `trace`, when given, receives the initial solution and then the current
/// solution after every iteration (one entry per evaluation).
[[nodiscard]] RunRecord run_ea_from(const LinearObjective& f, const MutationParams& params, BitString initial,
                                    std::uint64_t seed, std::uint64_t max_iters,
                                    std::vector<BitString>* trace = nullptr);

/// Uniformly random bit string of length n; draws one 64-bit word per 64 bits.
[[nodiscard]] BitString random_bitstring(std::size_t n, SplitMix64& rng);

}  // namespace driftlab
