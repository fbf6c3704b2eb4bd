#pragma once

/// @file weights.hpp
/// @brief Weights of the adaptive potential Phi_f(x) = sum w_i x_i.
///
/// Weights are stored as Real (x87 extended precision, exponent range
/// about 1e+-4932). Within a block B with right end r:
///   copy regime:   w_i = w_r a_i / a_r
///   damped regime: w_i = w_r min(K^{(i-r)c/n}, a_i / a_r)
/// Since w_i <= a_i / a_1 for every i, weights never leave the range of the
/// coefficients, so no separate log-space path is needed. Serialization uses
/// {log_value, sign} pairs regardless.

#include <span>
#include <vector>

#include "driftlab/bitstring.hpp"
#include "driftlab/blocks.hpp"
#include "driftlab/drift_params.hpp"
#include "driftlab/objective.hpp"

namespace driftlab {

class DriftWeights {
public:
    /// Hand-built weights; throws ValidationError on a negative or non-finite entry.
    DriftWeights(std::vector<Real> w, DriftParams params);

    [[nodiscard]] std::size_t n() const noexcept { return w_.size(); }
    /// w_i for 1-based i.
    [[nodiscard]] Real w(std::size_t i) const { return w_[i - 1]; }
    [[nodiscard]] std::span<const Real> values() const noexcept { return w_; }
    [[nodiscard]] const DriftParams& params() const noexcept { return params_; }

    /// Sum of all weights, i.e. the maximum of Phi.
    [[nodiscard]] Real total() const;

private:
    std::vector<Real> w_;
    DriftParams params_;
};

[[nodiscard]] DriftWeights build_weights(const LinearObjective& f, const BlockStructure& structure,
                                         const DriftParams& params);

/// sum_i w_i x_i accumulated from position 1 upward.
[[nodiscard]] Real phi(const DriftWeights& weights, const BitString& x);

}  // namespace driftlab
