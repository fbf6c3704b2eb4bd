#pragma once

/// @file drift_estimate.hpp
/// @brief One-step expected potential E[Phi(x_new) | x], exact or sampled.

#include <cstddef>
#include <cstdint>

#include "driftlab/bitstring.hpp"
#include "driftlab/objective.hpp"
#include "driftlab/weights.hpp"

namespace driftlab {

enum class EstimateMethod { exact, monte_carlo };

[[nodiscard]] const char* to_string(EstimateMethod method) noexcept;

inline constexpr std::size_t exact_enumeration_cap = 20;

/// Two-sided 99% standard normal quantile.
inline constexpr double z_99 = 2.5758293035489004;

struct DriftEstimate {
    BitString state;
    Real phi_value = 0;
    Real expected_phi_next = 0;
    /// 1 - E[Phi(x_new)] / Phi(x).
    Real drift_factor = 0;
    EstimateMethod method = EstimateMethod::exact;
    std::uint64_t samples = 0;
    /// Monte Carlo only: 99% half-width on expected_phi_next.
    Real ci_halfwidth = 0;
};

/// Result of enumerating all 2^n mutation masks from one state.
struct MaskEnumeration {
    Real expected_phi_next = 0;
    /// Sum of the mask probabilities; 1 up to rounding.
    Real probability_mass = 0;
    std::uint64_t masks = 0;
};

/// Sum over every mask y of p^{|y|} (1-p)^{n-|y|} Phi(select(f, x, x xor y)),
/// accumulated with Neumaier compensation. Throws CapExceededError for
/// n > `cap` (at most 20).
[[nodiscard]] MaskEnumeration enumerate_masks(const LinearObjective& f, const DriftWeights& weights,
                                              const BitString& x, double c,
                                              std::size_t cap = exact_enumeration_cap);

[[nodiscard]] Real exact_expected_phi_next(const LinearObjective& f, const DriftWeights& weights, const BitString& x,
                                           double c, std::size_t cap = exact_enumeration_cap);

/// Requires x != 0.
[[nodiscard]] DriftEstimate exact_drift_factor(const LinearObjective& f, const DriftWeights& weights,
                                               const BitString& x, double c,
                                               std::size_t cap = exact_enumeration_cap);

/// Sample mean of Phi(select(f, x, mutate(x))) over `samples` mutations
/// drawn from SplitMix64(seed), one mutate() call per sample. Requires
/// samples >= 1000 and x != 0.
[[nodiscard]] DriftEstimate mc_drift_estimate(const LinearObjective& f, const DriftWeights& weights,
                                              const BitString& x, double c, std::uint64_t samples,
                                              std::uint64_t seed);

}  // namespace driftlab
