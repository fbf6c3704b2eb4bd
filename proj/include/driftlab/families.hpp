#pragma once

/// @file families.hpp
/// @brief Generators for the linear objective corpus.
///
/// Every generator returns sorted positive coefficients, so normalization is
/// the identity on its output. Randomness comes from SplitMix64(seed) only.
///
///   onemax            a_i = 1
///   binval            a_i = 2^{i-1} (n <= 16383)
///   uniform_random    n integers drawn from U{1, ..., n^3}, sorted
///   lognormal_random  n values e^{sigma Z}, Z standard normal (Box-Muller),
///                     sorted; sigma defaults to ln n
///   mixed_regime      built in log space from a_1 = 1, alternating
///                       flat run:      length U{1, ..., max(1, floor(n/10))},
///                                      log step 0
///                       geometric run: length U{1, ..., ceil(2 log2 n)},
///                                      each log step U[ln 2, ln n)
///                     starting with a flat run. Once the accumulated log
///                     reaches mixed_log_budget all remaining steps are flat.
///   explicit          a user list passed through normalize_objective

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "driftlab/objective.hpp"

namespace driftlab {

enum class FamilyKind { onemax, binval, uniform_random, lognormal_random, mixed_regime, explicit_list };

[[nodiscard]] const char* to_string(FamilyKind kind) noexcept;
/// Accepts the names printed by to_string ("explicit" for explicit_list).
[[nodiscard]] FamilyKind parse_family_kind(const std::string& name);

inline constexpr double mixed_log_budget = 10000.0;
inline constexpr std::size_t binval_max_n = 16383;

struct FamilySpec {
    FamilyKind kind = FamilyKind::onemax;
    /// lognormal_random only; unset means ln n.
    std::optional<double> sigma;
    /// explicit_list only.
    std::vector<double> coefficients;
};

/// Deterministic in (spec, n, seed). For explicit_list n must equal the
/// number of non-zero coefficients.
[[nodiscard]] LinearObjective generate_family(const FamilySpec& spec, std::size_t n, std::uint64_t seed);

/// True for kinds whose output depends on the seed.
[[nodiscard]] bool is_random_family(FamilyKind kind) noexcept;

}  // namespace driftlab
