#include "driftlab/drift_estimate.hpp"

#include <bit>
#include <cmath>
#include <vector>

#include "driftlab/ea.hpp"
#include "driftlab/errors.hpp"

namespace driftlab {

const char* to_string(EstimateMethod method) noexcept {
    return method == EstimateMethod::exact ? "exact" : "monte_carlo";
}

namespace {

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(Real v) noexcept {
        const Real t = sum_ + v;
        if (std::fabs(sum_) >= std::fabs(v))
            compensation_ += (sum_ - t) + v;
        else
            compensation_ += (v - t) + sum_;
        sum_ = t;
    }
    [[nodiscard]] Real value() const noexcept { return sum_ + compensation_; }

private:
    Real sum_ = 0;
    Real compensation_ = 0;
};

void check_sizes(const LinearObjective& f, const DriftWeights& weights, const BitString& x) {
    if (x.size() != f.n() || weights.n() != f.n()) throw ValidationError("drift estimate: size mismatch");
}

void require_nonzero(const BitString& x) {
    if (x.is_zero()) throw ValidationError("drift factor: state must not be the all-zero string");
}

}  // namespace

MaskEnumeration enumerate_masks(const LinearObjective& f, const DriftWeights& weights, const BitString& x, double c,
                                std::size_t cap) {
    check_sizes(f, weights, x);
    const std::size_t n = f.n();
    if (n > cap || n > exact_enumeration_cap)
        throw CapExceededError("exact enumeration: n = " + std::to_string(n) + " exceeds the cap of " +
                               std::to_string(std::min(cap, exact_enumeration_cap)));
    const MutationParams params(c, n);
    const Real p = params.rate();

    std::vector<Real> mask_probability(n + 1);
    for (std::size_t k = 0; k <= n; ++k)
        mask_probability[k] = std::pow(p, static_cast<Real>(k)) * std::pow(1 - p, static_cast<Real>(n - k));

    const auto coeffs = f.coefficients();
    const auto w = weights.values();
    const auto state = static_cast<std::uint32_t>(x.packed());
    Real phi_state = 0;
    for (std::size_t k = 0; k < n; ++k)
        if ((state >> k) & 1U) phi_state += w[k];

    CompensatedSum expectation;
    CompensatedSum mass;
    std::vector<Real> terms;
    terms.reserve(n);
    const std::uint32_t mask_count = 1U << n;
    for (std::uint32_t mask = 0; mask < mask_count; ++mask) {
        const Real prob = mask_probability[static_cast<std::size_t>(std::popcount(mask))];
        mass.add(prob);

        terms.clear();
        for (std::uint32_t rest = mask; rest != 0; rest &= rest - 1) {
            const int k = std::countr_zero(rest);
            terms.push_back(((state >> k) & 1U) ? -coeffs[k] : coeffs[k]);
        }
        int sign;
        if (f.exact_integer()) {
            Real delta = 0;
            for (Real t : terms) delta += t;
            sign = (delta > 0) - (delta < 0);
        } else {
            sign = exact_sum_sign(terms);
        }

        Real phi_next = phi_state;
        if (sign <= 0 && mask != 0) {
            const std::uint32_t next = state ^ mask;
            phi_next = 0;
            for (std::size_t k = 0; k < n; ++k)
                if ((next >> k) & 1U) phi_next += w[k];
        }
        expectation.add(prob * phi_next);
    }
    return {expectation.value(), mass.value(), mask_count};
}

Real exact_expected_phi_next(const LinearObjective& f, const DriftWeights& weights, const BitString& x, double c,
                             std::size_t cap) {
    return enumerate_masks(f, weights, x, c, cap).expected_phi_next;
}

DriftEstimate exact_drift_factor(const LinearObjective& f, const DriftWeights& weights, const BitString& x, double c,
                                 std::size_t cap) {
    require_nonzero(x);
    const MaskEnumeration e = enumerate_masks(f, weights, x, c, cap);
    DriftEstimate out;
    out.state = x;
    out.phi_value = phi(weights, x);
    out.expected_phi_next = e.expected_phi_next;
    out.drift_factor = 1 - e.expected_phi_next / out.phi_value;
    out.method = EstimateMethod::exact;
    out.samples = e.masks;
    return out;
}

DriftEstimate mc_drift_estimate(const LinearObjective& f, const DriftWeights& weights, const BitString& x, double c,
                                std::uint64_t samples, std::uint64_t seed) {
    check_sizes(f, weights, x);
    require_nonzero(x);
    if (samples < 1000) throw ValidationError("mc_drift_estimate: at least 1000 samples are required");
    const MutationParams params(c, f.n());
    const double p = params.rate();

    // Same draw discipline as mutate(): one uniform per position, 1..n.
    SplitMix64 rng(seed);
    const auto& bits = x.raw();
    const auto w = weights.values();
    const Real phi_state = phi(weights, x);
    std::vector<std::uint32_t> flips;
    std::vector<std::uint8_t> next;
    Real mean = 0;
    Real m2 = 0;
    for (std::uint64_t s = 1; s <= samples; ++s) {
        flips.clear();
        for (std::size_t k = 0; k < bits.size(); ++k)
            if (rng.uniform() < p) flips.push_back(static_cast<std::uint32_t>(k + 1));
        Real value = phi_state;
        if (!flips.empty() && flip_delta_sign(f, x, flips) <= 0) {
            next = bits;
            for (auto pos : flips) next[pos - 1] ^= 1U;
            value = 0;
            for (std::size_t k = 0; k < next.size(); ++k)
                if (next[k]) value += w[k];
        }
        const Real d = value - mean;
        mean += d / static_cast<Real>(s);
        m2 += d * (value - mean);
    }
    const Real variance = m2 / static_cast<Real>(samples - 1);

    DriftEstimate out;
    out.state = x;
    out.phi_value = phi_state;
    out.expected_phi_next = mean;
    out.drift_factor = 1 - mean / phi_state;
    out.method = EstimateMethod::monte_carlo;
    out.samples = samples;
    out.ci_halfwidth = static_cast<Real>(z_99) * std::sqrt(variance / static_cast<Real>(samples));
    return out;
}

}  // namespace driftlab
