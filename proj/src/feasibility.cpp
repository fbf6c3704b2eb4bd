#include "driftlab/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "driftlab/errors.hpp"
#include "driftlab/parallel.hpp"
#include "driftlab/rng.hpp"

namespace driftlab {

const char* to_string(VerificationMode mode) noexcept {
    return mode == VerificationMode::exhaustive ? "exhaustive" : "sampled";
}

namespace {

BitString random_with_weight(std::size_t n, std::size_t ones, SplitMix64& rng) {
    BitString x(n);
    // Partial Fisher-Yates over positions.
    std::vector<std::size_t> positions(n);
    for (std::size_t k = 0; k < n; ++k) positions[k] = k + 1;
    for (std::size_t k = 0; k < ones; ++k) {
        const std::size_t pick = k + static_cast<std::size_t>(rng.below(n - k));
        std::swap(positions[k], positions[pick]);
        x.set(positions[k], true);
    }
    return x;
}

}  // namespace

std::vector<BitString> sampled_states(const FitnessPartition& partition, std::size_t n,
                                      const FeasibilityOptions& options) {
    std::vector<BitString> states;
    std::set<std::vector<std::uint8_t>> seen;
    auto add = [&](BitString x) {
        if (x.is_zero()) return;
        if (seen.insert(x.raw()).second) states.push_back(std::move(x));
    };

    add(BitString(n, true));
    for (const Interval& part : partition.parts) {
        BitString lowest(n);
        lowest.set(part.right, true);
        add(std::move(lowest));
        BitString highest(n);
        for (std::size_t i = 1; i <= part.left; ++i) highest.set(i, true);
        add(std::move(highest));
    }
    for (std::size_t i : {std::size_t{1}, std::size_t{2}, n}) {
        if (i < 1 || i > n) continue;
        BitString single(n);
        single.set(i, true);
        add(std::move(single));
    }

    SplitMix64 rng(derive_seed(options.seed, 0x5354524154ULL));
    std::vector<std::size_t> strata = {1, 2, n / 2, n >= 1 ? n - 1 : 0, n};
    for (std::size_t weight : strata) {
        if (weight == 0 || weight > n) continue;
        for (std::size_t k = 0; k < options.per_stratum; ++k) add(random_with_weight(n, weight, rng));
    }
    for (std::size_t k = 0; k < options.uniform_states; ++k) {
        BitString x(n);
        for (std::size_t i = 1; i <= n; ++i) x.set(i, (rng.next_u64() >> 63) != 0);
        add(std::move(x));
    }
    return states;
}

FeasibilityReport verify_feasibility(const LinearObjective& f, const DriftWeights& weights,
                                     const FitnessPartition& partition, double c, const FeasibilityOptions& options) {
    const std::size_t n = f.n();
    if (weights.n() != n || partition.n != n) throw ValidationError("verify_feasibility: size mismatch");

    std::vector<BitString> states;
    bool partial = false;
    if (options.mode == VerificationMode::exhaustive) {
        if (n > exhaustive_state_cap)
            throw CapExceededError("exhaustive verification needs n <= " + std::to_string(exhaustive_state_cap));
        std::uint64_t total = (std::uint64_t{1} << n) - 1;
        if (options.budget != 0 && options.budget < total) {
            total = options.budget;
            partial = true;
        }
        states.reserve(total);
        for (std::uint64_t s = 1; s <= total; ++s) states.push_back(BitString::from_packed(s, n));
    } else {
        states = sampled_states(partition, n, options);
        if (options.budget != 0 && options.budget < states.size()) {
            states.resize(options.budget);
            partial = true;
        }
    }

    const bool exact = n <= exact_enumeration_cap;
    std::vector<DriftEstimate> estimates(states.size());
    parallel_for(states.size(), options.threads, [&](std::size_t k) {
        estimates[k] = exact ? exact_drift_factor(f, weights, states[k], c)
                             : mc_drift_estimate(f, weights, states[k], c, options.samples_per_state,
                                                 derive_seed(options.seed, k));
    });

    const DriftParams& params = weights.params();
    FeasibilityReport report;
    report.n = n;
    report.c = c;
    report.mode = options.mode;
    report.method = exact ? EstimateMethod::exact : EstimateMethod::monte_carlo;
    report.states_checked = states.size();
    report.partial = partial;
    report.min_drift_factor = std::numeric_limits<Real>::infinity();
    for (const auto& e : estimates) {
        if (e.drift_factor < report.min_drift_factor) {
            report.min_drift_factor = e.drift_factor;
            report.argmin = e.state;
        }
        // Monte Carlo states count only when the whole 99% interval is non-positive.
        const Real upper = exact ? e.drift_factor : e.drift_factor + e.ci_halfwidth / e.phi_value;
        if (upper <= 0) report.violations.push_back({e.state, e.drift_factor});
    }
    report.implied_nu =
        report.min_drift_factor > 0 ? 1 / report.min_drift_factor : std::numeric_limits<Real>::infinity();
    report.target_delta = c * std::exp(-3.0 * c) * (1.0 - params.epsilon) * (1.0 - params.epsilon);
    report.meets_target = report.min_drift_factor >= static_cast<Real>(report.target_delta) / static_cast<Real>(n);
    report.n0 = minimal_n0(c, params.epsilon);
    report.informational = n < report.n0;
    if (options.keep_estimates) report.estimates = std::move(estimates);
    return report;
}

DefinitionReport check_definition_conditions(const DriftWeights& weights) {
    DefinitionReport report;
    report.phi_of_zero = phi(weights, BitString(weights.n()));
    report.min_nonzero_phi = *std::min_element(weights.values().begin(), weights.values().end());
    report.condition_zero = report.phi_of_zero == 0;
    report.condition_at_least_one = report.min_nonzero_phi >= 1;
    return report;
}

}  // namespace driftlab
