#include "driftlab/weights.hpp"

#include <cmath>

#include "driftlab/errors.hpp"

namespace driftlab {

DriftWeights::DriftWeights(std::vector<Real> w, DriftParams params) : w_(std::move(w)), params_(params) {
    if (w_.empty()) throw ValidationError("drift weights: empty weight vector");
    for (Real v : w_)
        if (!(v >= 0) || !std::isfinite(v)) throw ValidationError("drift weights: weights must be finite and non-negative");
}

Real DriftWeights::total() const {
    Real sum = 0;
    for (Real v : w_) sum += v;
    return sum;
}

DriftWeights build_weights(const LinearObjective& f, const BlockStructure& structure, const DriftParams& params) {
    const std::size_t n = f.n();
    if (structure.n != n) throw ValidationError("build_weights: block structure size differs from objective size");
    validate(params);

    std::vector<Real> w(n, 0);
    w[0] = 1;
    const Real growth_per_position =
        static_cast<Real>(params.c) * static_cast<Real>(params.ln_K) / static_cast<Real>(n);
    for (const Block& block : structure.blocks) {
        const std::size_t r = block.span.right;
        const Real w_r = w[r - 1];
        const Real a_r = f.a(r);
        for (std::size_t i = r + 1; i <= block.span.left; ++i) {
            const Real ratio = f.a(i) / a_r;
            if (block.regime == Regime::copy) {
                w[i - 1] = w_r * ratio;
                continue;
            }
            const Real growth_log = static_cast<Real>(i - r) * growth_per_position;
            w[i - 1] = growth_log < std::log(ratio) ? w_r * std::exp(growth_log) : w_r * ratio;
        }
    }
    return DriftWeights(std::move(w), params);
}

Real phi(const DriftWeights& weights, const BitString& x) {
    if (x.size() != weights.n()) throw ValidationError("phi: bit string length differs from weight count");
    Real total = 0;
    const auto& bits = x.raw();
    const auto w = weights.values();
    for (std::size_t k = 0; k < bits.size(); ++k)
        if (bits[k]) total += w[k];
    return total;
}

}  // namespace driftlab
