#pragma once

/// @file feasibility.hpp
/// @brief Checks of the three drift-function conditions over state sets.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "driftlab/drift_estimate.hpp"
#include "driftlab/drift_params.hpp"
#include "driftlab/objective.hpp"
#include "driftlab/partition.hpp"
#include "driftlab/weights.hpp"

namespace driftlab {

enum class VerificationMode { exhaustive, sampled };

[[nodiscard]] const char* to_string(VerificationMode mode) noexcept;

inline constexpr std::size_t exhaustive_state_cap = 12;

struct FeasibilityOptions {
    VerificationMode mode = VerificationMode::exhaustive;
    /// Maximum number of states to check; 0 means no limit.
    std::uint64_t budget = 0;
    /// Monte Carlo samples per state when n exceeds the exact-enumeration cap.
    std::uint64_t samples_per_state = 100000;
    std::uint64_t seed = 1;
    /// Uniform random strings added to the sampled state set.
    std::size_t uniform_states = 32;
    /// Strings per Hamming-weight stratum in sampled mode.
    std::size_t per_stratum = 4;
    std::size_t threads = 1;
    bool keep_estimates = false;
};

struct DriftViolation {
    BitString state;
    Real drift_factor = 0;
};

struct FeasibilityReport {
    std::size_t n = 0;
    double c = 0;
    VerificationMode mode = VerificationMode::exhaustive;
    EstimateMethod method = EstimateMethod::exact;
    std::uint64_t states_checked = 0;
    bool partial = false;

    Real min_drift_factor = 0;
    BitString argmin;
    /// 1 / min_drift_factor (infinite when the minimum is not positive).
    Real implied_nu = 0;
    /// c e^{-3c} (1 - eps)^2.
    double target_delta = 0;
    /// Whether min_drift_factor >= target_delta / n.
    bool meets_target = false;
    /// n < n0: the drift guarantee is not claimed, results are descriptive.
    bool informational = false;
    std::uint64_t n0 = 0;

    std::vector<DriftViolation> violations;
    std::vector<DriftEstimate> estimates;
};

/// Exhaustive mode walks every non-zero state (n <= 12); sampled mode uses
/// all-ones, per-part extremes, single-bit strings, Hamming strata
/// {1, 2, n/2, n-1, n} and uniform strings. States are evaluated exactly up
/// to n = 20, by Monte Carlo beyond.
[[nodiscard]] FeasibilityReport verify_feasibility(const LinearObjective& f, const DriftWeights& weights,
                                                   const FitnessPartition& partition, double c,
                                                   const FeasibilityOptions& options);

/// The state list sampled mode would check, in order.
[[nodiscard]] std::vector<BitString> sampled_states(const FitnessPartition& partition, std::size_t n,
                                                    const FeasibilityOptions& options);

struct DefinitionReport {
    Real phi_of_zero = 0;
    /// Smallest Phi over non-zero strings, i.e. the smallest weight.
    Real min_nonzero_phi = 0;
    bool condition_zero = false;
    bool condition_at_least_one = false;
    [[nodiscard]] bool passed() const noexcept { return condition_zero && condition_at_least_one; }
};

/// Phi(0) = 0 and Phi(x) >= 1 for x != 0.
[[nodiscard]] DefinitionReport check_definition_conditions(const DriftWeights& weights);

}  // namespace driftlab
