#include "driftlab/bounds.hpp"

#include <cmath>

#include "driftlab/errors.hpp"

namespace driftlab {

std::uint64_t ceil_tolerant(double v) {
    const double nearest = std::round(v);
    if (std::fabs(v - nearest) <= 1e-12 * std::max(1.0, std::fabs(v))) return static_cast<std::uint64_t>(nearest);
    return static_cast<std::uint64_t>(std::ceil(v));
}

namespace {

void check_lambda(std::optional<double> lambda) {
    if (lambda && !(*lambda > 0.0)) throw ValidationError("bound: lambda must be positive");
}

}  // namespace

TheoremBound theorem_bound_log(double nu, double log_phi_max, std::optional<double> lambda) {
    if (!(nu >= 1.0)) throw ValidationError("theorem_bound: nu must be >= 1");
    if (!(log_phi_max >= 0.0)) throw ValidationError("theorem_bound: Phi_max must be >= 1");
    check_lambda(lambda);
    TheoremBound out;
    out.expected_bound = nu * (log_phi_max + 1.0);
    if (lambda) {
        out.tail_threshold = ceil_tolerant(nu * (log_phi_max + *lambda));
        out.tail_prob_bound = std::exp(-*lambda);
    }
    return out;
}

TheoremBound theorem_bound(double nu, double phi_max, std::optional<double> lambda) {
    if (!(phi_max >= 1.0)) throw ValidationError("theorem_bound: Phi_max must be >= 1");
    return theorem_bound_log(nu, std::log(phi_max), lambda);
}

std::vector<PartPotential> part_potentials(const DriftWeights& weights, const FitnessPartition& partition) {
    if (weights.n() != partition.n) throw ValidationError("part_potentials: size mismatch");
    std::vector<PartPotential> out;
    Real prefix = 0;
    std::size_t next = 1;
    for (const Interval& part : partition.parts) {
        for (; next <= part.left; ++next) prefix += weights.w(next);
        out.push_back({part, static_cast<double>(std::log(weights.w(part.right))), static_cast<double>(std::log(prefix))});
    }
    return out;
}

PiecewiseBound piecewise_bound(double nu, const DriftWeights& weights, const FitnessPartition& partition,
                               std::optional<double> lambda) {
    if (!(nu >= 1.0)) throw ValidationError("piecewise_bound: nu must be >= 1");
    if (partition.parts.empty()) throw ValidationError("piecewise_bound: empty partition");
    check_lambda(lambda);

    PiecewiseBound out;
    out.parts = part_potentials(weights, partition);
    std::uint64_t threshold = 0;
    for (const auto& part : out.parts) {
        const double spread = part.log_max - part.log_min;
        out.expected_bound += nu * (spread + 1.0);
        if (lambda) threshold += ceil_tolerant(nu * (spread + *lambda));
    }
    if (lambda) {
        out.tail_threshold_sum = threshold;
        out.tail_prob_bound = static_cast<double>(out.parts.size()) * std::exp(-*lambda);
    }
    return out;
}

}  // namespace driftlab
