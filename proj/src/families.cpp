#include "driftlab/families.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "driftlab/errors.hpp"
#include "driftlab/rng.hpp"

namespace driftlab {

const char* to_string(FamilyKind kind) noexcept {
    switch (kind) {
        case FamilyKind::onemax: return "onemax";
        case FamilyKind::binval: return "binval";
        case FamilyKind::uniform_random: return "uniform_random";
        case FamilyKind::lognormal_random: return "lognormal_random";
        case FamilyKind::mixed_regime: return "mixed_regime";
        case FamilyKind::explicit_list: return "explicit";
    }
    return "unknown";
}

FamilyKind parse_family_kind(const std::string& name) {
    for (FamilyKind k : {FamilyKind::onemax, FamilyKind::binval, FamilyKind::uniform_random,
                         FamilyKind::lognormal_random, FamilyKind::mixed_regime, FamilyKind::explicit_list})
        if (name == to_string(k)) return k;
    throw ValidationError("unknown family '" + name +
                          "' (expected onemax, binval, uniform_random, lognormal_random, mixed_regime or explicit)");
}

bool is_random_family(FamilyKind kind) noexcept {
    return kind == FamilyKind::uniform_random || kind == FamilyKind::lognormal_random ||
           kind == FamilyKind::mixed_regime;
}

namespace {

std::uint64_t uniform_int(SplitMix64& rng, std::uint64_t lo, std::uint64_t hi) {
    return lo + rng.below(hi - lo + 1);
}

std::vector<Real> lognormal(std::size_t n, double sigma, SplitMix64& rng) {
    std::vector<Real> a;
    a.reserve(n + 1);
    while (a.size() < n) {
        const double u1 = 1.0 - rng.uniform();  // (0, 1]
        const double u2 = rng.uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        a.push_back(std::exp(static_cast<Real>(sigma * radius * std::cos(angle))));
        a.push_back(std::exp(static_cast<Real>(sigma * radius * std::sin(angle))));
    }
    a.resize(n);
    std::sort(a.begin(), a.end());
    return a;
}

std::vector<Real> mixed_regime(std::size_t n, SplitMix64& rng) {
    const double ln_n = std::log(static_cast<double>(n));
    const std::uint64_t flat_max = std::max<std::uint64_t>(1, n / 10);
    const std::uint64_t geo_max =
        std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(2.0 * std::log2(static_cast<double>(n)))));
    std::vector<Real> a{1.0L};
    Real log_a = 0;
    bool flat = true;
    while (a.size() < n) {
        const std::uint64_t len = uniform_int(rng, 1, flat ? flat_max : geo_max);
        for (std::uint64_t k = 0; k < len && a.size() < n; ++k) {
            if (!flat && log_a < mixed_log_budget) log_a += std::log(2.0) + (ln_n - std::log(2.0)) * rng.uniform();
            a.push_back(std::exp(log_a));
        }
        flat = !flat;
    }
    return a;
}

}  // namespace

LinearObjective generate_family(const FamilySpec& spec, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw ValidationError("generate_family: n must be at least 1");
    SplitMix64 rng(seed);
    switch (spec.kind) {
        case FamilyKind::onemax: return LinearObjective(std::vector<Real>(n, 1.0L));
        case FamilyKind::binval: {
            if (n > binval_max_n)
                throw ValidationError("binval: n must be <= " + std::to_string(binval_max_n) +
                                      " (2^{n-1} must be representable)");
            std::vector<Real> a(n);
            for (std::size_t i = 0; i < n; ++i) a[i] = std::ldexp(1.0L, static_cast<int>(i));
            return LinearObjective(std::move(a));
        }
        case FamilyKind::uniform_random: {
            const double cube = std::pow(static_cast<double>(n), 3.0);
            if (cube > 9.0e15) throw ValidationError("uniform_random: n^3 must stay below 2^53");
            std::vector<Real> a(n);
            for (auto& v : a) v = static_cast<Real>(uniform_int(rng, 1, static_cast<std::uint64_t>(cube)));
            std::sort(a.begin(), a.end());
            return LinearObjective(std::move(a));
        }
        case FamilyKind::lognormal_random: {
            const double sigma = spec.sigma.value_or(std::log(static_cast<double>(n)));
            if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ValidationError("lognormal_random: sigma must be >= 0");
            return LinearObjective(lognormal(n, sigma, rng));
        }
        case FamilyKind::mixed_regime: return LinearObjective(mixed_regime(n, rng));
        case FamilyKind::explicit_list: {
            LinearObjective f = normalize_objective(spec.coefficients);
            if (f.n() != n)
                throw ValidationError("explicit: n = " + std::to_string(n) + " but the list has " +
                                      std::to_string(f.n()) + " non-zero coefficients");
            return f;
        }
    }
    throw ValidationError("generate_family: unknown kind");
}

}  // namespace driftlab
