#pragma once

/// @file objective.hpp
/// @brief Linear pseudo-Boolean objectives f(x) = sum a_i x_i.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "driftlab/bitstring.hpp"
#include "driftlab/exact_sum.hpp"

namespace driftlab {

/// How a raw coefficient list was turned into a normalized objective.
///
/// With raw input r_1..r_m and user bits u_1..u_m:
///   f_raw(u) = constant_offset + f(to_normalized(u)),
/// where normalized position k + 1 reads user position permutation[k]
/// (0-based), complemented when that raw coefficient was negative.
struct NormalizationReport {
    std::vector<std::size_t> permutation;
    std::vector<std::size_t> dropped_zero;
    std::vector<std::size_t> sign_flipped;
    Real constant_offset = 0;
    std::size_t raw_size = 0;

    [[nodiscard]] bool is_identity() const noexcept;
};

class LinearObjective {
public:
    /// Takes coefficients already in normalized form: positive and
    /// non-decreasing. Throws ValidationError otherwise.
    explicit LinearObjective(std::vector<Real> coefficients);

    [[nodiscard]] std::size_t n() const noexcept { return coefficients_.size(); }

    /// a_i for 1-based i.
    [[nodiscard]] Real a(std::size_t i) const { return coefficients_[i - 1]; }
    [[nodiscard]] std::span<const Real> coefficients() const noexcept { return coefficients_; }

    /// All coefficients equal (OneMax up to scale).
    [[nodiscard]] bool uniform() const noexcept { return uniform_; }

    /// All coefficients integral with total below 2^63, so every partial sum
    /// is exact in Real.
    [[nodiscard]] bool exact_integer() const noexcept { return exact_integer_; }

    [[nodiscard]] const NormalizationReport& provenance() const noexcept { return provenance_; }

    /// Map a bit string over the raw positions to normalized index space.
    [[nodiscard]] BitString to_normalized(const BitString& user_bits) const;

private:
    friend LinearObjective normalize_objective(std::span<const double> raw);

    std::vector<Real> coefficients_;
    NormalizationReport provenance_;
    bool uniform_ = false;
    bool exact_integer_ = false;
};

/// Drop zeros, sign-flip negatives (complementing those bits) and sort.
/// Throws DegenerateObjectiveError when nothing is left.
[[nodiscard]] LinearObjective normalize_objective(std::span<const double> raw);

[[nodiscard]] inline LinearObjective normalize_objective(const std::vector<double>& raw) {
    return normalize_objective(std::span<const double>(raw));
}

/// sum_i a_i x_i accumulated from position 1 upward.
[[nodiscard]] Real evaluate(const LinearObjective& f, const BitString& x);

/// Exact sign of f(x with `flips` toggled) - f(x); `flips` are 1-based and distinct.
[[nodiscard]] int flip_delta_sign(const LinearObjective& f, const BitString& x,
                                  std::span<const std::uint32_t> flips);

/// Exact sign of f(y) - f(x).
[[nodiscard]] int compare(const LinearObjective& f, const BitString& x, const BitString& y);

/// Returns `offspring` iff f(offspring) <= f(parent); ties accept the offspring.
[[nodiscard]] const BitString& select(const LinearObjective& f, const BitString& parent,
                                      const BitString& offspring);

}  // namespace driftlab
