#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

namespace driftlab {

/// Parameters of the adaptive drift construction.
///
/// K is carried as ln K because the default choice for moderate c is far
/// outside double range (c = 1, eps = 0.5 already gives K = 2^251).
struct DriftParams {
    double epsilon = 0.5;
    double ln_K = 0.0;
    double gamma = 0.5;
    double c = 1.0;
    /// Smallest n with (1 - c/n)^{3n} >= (1 - eps) e^{-3c}.
    std::uint64_t n0 = 1;
    /// False when K or gamma were supplied by the caller.
    bool derived = true;

    [[nodiscard]] double log2_K() const noexcept;

    /// 2 K^{2 c gamma} / ln K, the gamma-dependent error term of the drift bound.
    [[nodiscard]] double case1_term() const noexcept;

    /// e^{-c} eps / 8, the value case1_term() must not exceed.
    [[nodiscard]] double case1_target() const noexcept;

    /// c e^{-3c} (1 - eps)^2, the per-step drift constant times n.
    [[nodiscard]] double target_delta() const noexcept;
};

/// Smallest n > c with (1 - c/n)^{3n} >= (1 - eps) e^{-3c}.
[[nodiscard]] std::uint64_t minimal_n0(double c, double epsilon);

/// Derive parameters from c and eps.
///
/// Without an override K is the smallest power of two with
/// 2 / ln K <= e^{-c} eps / 16. gamma is ln((eps/16) e^{-c} ln K) / (2 c ln K),
/// clamped into (0, 1/2]; a non-positive value throws UnachievableParamsError
/// carrying the raw gamma, and the caller may then supply gamma directly.
[[nodiscard]] DriftParams default_params(double c, double epsilon, std::optional<double> ln_K_override = std::nullopt,
                                         std::optional<double> gamma_override = std::nullopt);

/// Check the DriftParams invariants; throws ValidationError.
void validate(const DriftParams& params);

}  // namespace driftlab
