#include "driftlab/objective.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "driftlab/errors.hpp"

namespace driftlab {

bool NormalizationReport::is_identity() const noexcept {
    if (!dropped_zero.empty() || !sign_flipped.empty()) return false;
    for (std::size_t k = 0; k < permutation.size(); ++k)
        if (permutation[k] != k) return false;
    return true;
}

LinearObjective::LinearObjective(std::vector<Real> coefficients) : coefficients_(std::move(coefficients)) {
    if (coefficients_.empty()) throw ValidationError("linear objective needs at least one coefficient");
    for (std::size_t k = 0; k < coefficients_.size(); ++k) {
        const Real a = coefficients_[k];
        if (!(a > 0) || !std::isfinite(a)) throw ValidationError("coefficients must be positive and finite");
        if (k > 0 && a < coefficients_[k - 1]) throw ValidationError("coefficients must be non-decreasing");
    }
    uniform_ = coefficients_.front() == coefficients_.back();

    constexpr Real exact_limit = 0x1.0p63L;
    Real total = 0;
    exact_integer_ = true;
    for (Real a : coefficients_) {
        total += a;
        if (std::floor(a) != a || total >= exact_limit) {
            exact_integer_ = false;
            break;
        }
    }

    provenance_.raw_size = coefficients_.size();
    provenance_.permutation.resize(coefficients_.size());
    std::iota(provenance_.permutation.begin(), provenance_.permutation.end(), std::size_t{0});
}

BitString LinearObjective::to_normalized(const BitString& user_bits) const {
    if (user_bits.size() != provenance_.raw_size)
        throw ValidationError("to_normalized: bit string length differs from raw objective size");
    std::vector<bool> flipped(provenance_.raw_size, false);
    for (auto k : provenance_.sign_flipped) flipped[k] = true;
    BitString out(n());
    for (std::size_t k = 0; k < n(); ++k) {
        const std::size_t src = provenance_.permutation[k];
        out.set(k + 1, user_bits(src + 1) != flipped[src]);
    }
    return out;
}

LinearObjective normalize_objective(std::span<const double> raw) {
    if (raw.empty()) throw ValidationError("normalize_objective: empty coefficient list");

    NormalizationReport report;
    report.raw_size = raw.size();
    std::vector<std::size_t> kept;
    for (std::size_t k = 0; k < raw.size(); ++k) {
        if (!std::isfinite(raw[k])) throw ValidationError("normalize_objective: non-finite coefficient");
        if (raw[k] == 0.0) {
            report.dropped_zero.push_back(k);
            continue;
        }
        if (raw[k] < 0.0) {
            report.sign_flipped.push_back(k);
            report.constant_offset += static_cast<Real>(raw[k]);
        }
        kept.push_back(k);
    }
    if (kept.empty()) throw DegenerateObjectiveError("normalize_objective: all coefficients are zero");

    std::stable_sort(kept.begin(), kept.end(),
                     [&](std::size_t lhs, std::size_t rhs) { return std::fabs(raw[lhs]) < std::fabs(raw[rhs]); });

    std::vector<Real> coefficients;
    coefficients.reserve(kept.size());
    for (auto k : kept) coefficients.push_back(std::fabs(static_cast<Real>(raw[k])));

    LinearObjective f(std::move(coefficients));
    report.permutation = std::move(kept);
    f.provenance_ = std::move(report);
    return f;
}

Real evaluate(const LinearObjective& f, const BitString& x) {
    if (x.size() != f.n()) throw ValidationError("evaluate: bit string length differs from objective size");
    Real total = 0;
    const auto& bits = x.raw();
    const auto coeffs = f.coefficients();
    for (std::size_t k = 0; k < bits.size(); ++k)
        if (bits[k]) total += coeffs[k];
    return total;
}

int flip_delta_sign(const LinearObjective& f, const BitString& x, std::span<const std::uint32_t> flips) {
    const auto& bits = x.raw();
    if (f.uniform()) {
        long long balance = 0;
        for (auto pos : flips) balance += bits[pos - 1] ? -1 : 1;
        return (balance > 0) - (balance < 0);
    }
    thread_local std::vector<Real> terms;
    terms.clear();
    const auto coeffs = f.coefficients();
    for (auto pos : flips) terms.push_back(bits[pos - 1] ? -coeffs[pos - 1] : coeffs[pos - 1]);
    return exact_sum_sign(terms);
}

int compare(const LinearObjective& f, const BitString& x, const BitString& y) {
    if (x.size() != f.n() || y.size() != f.n())
        throw ValidationError("compare: bit string length differs from objective size");
    std::vector<std::uint32_t> flips;
    for (std::size_t k = 0; k < x.size(); ++k)
        if (x.raw()[k] != y.raw()[k]) flips.push_back(static_cast<std::uint32_t>(k + 1));
    return flip_delta_sign(f, x, flips);
}

const BitString& select(const LinearObjective& f, const BitString& parent, const BitString& offspring) {
    return compare(f, parent, offspring) <= 0 ? offspring : parent;
}

}  // namespace driftlab
