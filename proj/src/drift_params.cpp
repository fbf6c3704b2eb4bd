#include "driftlab/drift_params.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "driftlab/errors.hpp"

namespace driftlab {

double DriftParams::log2_K() const noexcept { return ln_K / std::numbers::ln2; }

double DriftParams::case1_term() const noexcept {
    if (ln_K <= 0.0) return INFINITY;
    return 2.0 * std::exp(2.0 * c * gamma * ln_K) / ln_K;
}

double DriftParams::case1_target() const noexcept { return std::exp(-c) * epsilon / 8.0; }

double DriftParams::target_delta() const noexcept {
    return c * std::exp(-3.0 * c) * (1.0 - epsilon) * (1.0 - epsilon);
}

std::uint64_t minimal_n0(double c, double epsilon) {
    const double target = std::log1p(-epsilon) - 3.0 * c;
    auto n = static_cast<std::uint64_t>(std::floor(c)) + 1;
    for (;; ++n) {
        const auto nn = static_cast<double>(n);
        if (3.0 * nn * std::log1p(-c / nn) >= target) return n;
    }
}

void validate(const DriftParams& params) {
    if (!(params.c > 0.0) || !std::isfinite(params.c)) throw ValidationError("drift params: c must be positive");
    if (!(params.epsilon > 0.0 && params.epsilon < 1.0)) throw ValidationError("drift params: epsilon must lie in (0, 1)");
    if (!(params.ln_K >= 0.0) || !std::isfinite(params.ln_K)) throw ValidationError("drift params: K must be >= 1");
    if (!(params.gamma > 0.0 && params.gamma < 1.0)) throw ValidationError("drift params: gamma must lie in (0, 1)");
}

DriftParams default_params(double c, double epsilon, std::optional<double> ln_K_override,
                           std::optional<double> gamma_override) {
    if (!(c > 0.0) || !std::isfinite(c)) throw ValidationError("default_params: c must be positive");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ValidationError("default_params: epsilon must lie in (0, 1)");

    DriftParams params;
    params.c = c;
    params.epsilon = epsilon;
    params.derived = !ln_K_override && !gamma_override;

    if (ln_K_override) {
        if (!(*ln_K_override >= 0.0) || !std::isfinite(*ln_K_override))
            throw ValidationError("default_params: K must be >= 1");
        params.ln_K = *ln_K_override;
    } else {
        // 2 / ln K <= e^{-c} eps / 16  <=>  ln K >= 32 e^c / eps.
        const double min_ln_K = 32.0 * std::exp(c) / epsilon;
        params.ln_K = std::ceil(min_ln_K / std::numbers::ln2) * std::numbers::ln2;
    }

    if (gamma_override) {
        params.gamma = *gamma_override;
    } else {
        const double raw = params.ln_K > 0.0
                               ? std::log(epsilon / 16.0 * std::exp(-c) * params.ln_K) / (2.0 * c * params.ln_K)
                               : -INFINITY;
        if (!(raw > 0.0)) {
            std::ostringstream msg;
            msg << "default_params: gamma = ln((eps/16) e^-c ln K) / (2 c ln K) = " << raw
                << " is not positive for c = " << c << ", eps = " << epsilon << ", log2 K = " << params.log2_K()
                << "; increase K or supply gamma";
            throw UnachievableParamsError(msg.str(), raw);
        }
        params.gamma = std::min(raw, 0.5);
    }
    params.n0 = minimal_n0(c, epsilon);
    validate(params);
    return params;
}

}  // namespace driftlab
