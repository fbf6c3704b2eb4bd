#include "driftlab/lemmas.hpp"

#include <algorithm>
#include <cmath>

#include "driftlab/bounds.hpp"
#include "driftlab/errors.hpp"

namespace driftlab {

const char* to_string(WeightLemma lemma) noexcept {
    switch (lemma) {
        case WeightLemma::geometric_run: return "geometric_run";
        case WeightLemma::damped_equality: return "damped_equality";
        case WeightLemma::run_to_left_end: return "run_to_left_end";
        case WeightLemma::short_block_tail: return "short_block_tail";
    }
    return "unknown";
}

bool LemmaReport::all_hold() const noexcept {
    return std::all_of(summary.begin(), summary.end(), [](const LemmaSummary& s) { return s.failed == 0; });
}

std::size_t LemmaReport::applicable() const noexcept {
    std::size_t total = 0;
    for (const auto& s : summary) total += s.applicable;
    return total;
}

namespace {

class Recorder {
public:
    Recorder(LemmaReport& report, bool record_all) : report_(report), record_all_(record_all) {
        for (WeightLemma l : {WeightLemma::geometric_run, WeightLemma::damped_equality, WeightLemma::run_to_left_end,
                              WeightLemma::short_block_tail})
            report_.summary.push_back({l, 0, 0, 0.0});
    }

    void inequality(WeightLemma lemma, Interval span, double log_lhs, double log_rhs) {
        add(lemma, span, log_lhs, log_rhs, log_rhs - log_lhs);
    }

    void equality(WeightLemma lemma, Interval span, double log_lhs, double log_rhs) {
        add(lemma, span, log_lhs, log_rhs, -std::fabs(log_lhs - log_rhs));
    }

private:
    void add(WeightLemma lemma, Interval span, double log_lhs, double log_rhs, double slack) {
        LemmaSummary& s = report_.summary[static_cast<std::size_t>(lemma)];
        s.min_slack = s.applicable == 0 ? slack : std::min(s.min_slack, slack);
        ++s.applicable;
        const bool holds = slack >= -lemma_tolerance;
        if (!holds) ++s.failed;
        if (!holds || record_all_) report_.checks.push_back({lemma, span, log_lhs, log_rhs, slack, holds});
    }

    LemmaReport& report_;
    bool record_all_;
};

}  // namespace

LemmaReport check_weight_lemmas(const DriftWeights& weights, const BlockStructure& structure,
                                const DriftParams& params, bool record_all) {
    const std::size_t n = weights.n();
    if (structure.n != n) throw ValidationError("check_weight_lemmas: size mismatch");

    LemmaReport report;
    Recorder rec(report, record_all);
    const double ln_n = std::log(static_cast<double>(n));
    const double c = params.c;
    const double ln_K = params.ln_K;
    report.large_n_precondition = ln_K > 0 && 4.0 * ln_n >= c * ln_K;
    if (!(ln_K > 0)) return report;

    // prefix[i] = sum_{j <= i} w_j
    std::vector<Real> prefix(n + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) prefix[i] = prefix[i - 1] + weights.w(i);
    auto log_sum = [&](std::size_t lo, std::size_t hi) {
        return static_cast<double>(std::log(prefix[hi] - prefix[lo - 1]));
    };
    auto log_w = [&](std::size_t i) { return static_cast<double>(std::log(weights.w(i))); };

    const double rate = c * ln_K / static_cast<double>(n);
    const double log_run_factor = std::log(static_cast<double>(n) / (c * ln_K) + 1.0);
    const bool large = report.large_n_precondition;
    const auto& blocks = structure.blocks;

    for (std::size_t s = 0; s < blocks.size();) {
        if (blocks[s].regime != Regime::damped) {
            ++s;
            continue;
        }
        std::size_t e = s;
        while (e + 1 < blocks.size() && blocks[e + 1].regime == Regime::damped) ++e;
        for (std::size_t b = s; b <= e; ++b) {
            const std::size_t r = blocks[b].span.right;
            for (std::size_t a = b; a <= e; ++a) {
                const std::size_t l = blocks[a].span.left;
                const Interval span{r, l};
                const double lhs = log_sum(r, l);
                const double t = static_cast<double>(l - r);
                rec.inequality(WeightLemma::geometric_run, span, lhs, t * rate + log_w(r) + log_run_factor);
                if (large && !structure.is_leftmost(a))
                    rec.inequality(WeightLemma::run_to_left_end, span, lhs, log_w(l) + log_run_factor);
            }
        }
        s = e + 1;
    }

    if (large) {
        for (std::size_t k = 0; k < blocks.size(); ++k) {
            if (structure.is_leftmost(k)) continue;
            const Interval span = blocks[k].span;
            if (blocks[k].regime == Regime::damped) {
                const double t = static_cast<double>(span.left - span.right);
                rec.equality(WeightLemma::damped_equality, span, log_w(span.left), log_w(span.right) + t * rate);
            }
            if (!blocks[k].is_long) {
                const double nn = static_cast<double>(n);
                const double factor = nn / (c * ln_K) + 1.0 + params.gamma * nn + std::pow(nn, -3.0);
                rec.inequality(WeightLemma::short_block_tail, Interval{1, span.left}, log_sum(1, span.left),
                               log_w(span.left) + std::log(factor));
            }
        }
    }
    return report;
}

std::vector<PartSpread> check_partition_polynomiality(const DriftWeights& weights,
                                                      const FitnessPartition& partition) {
    const double ln_n = std::log(static_cast<double>(weights.n()));
    std::vector<PartSpread> out;
    for (const PartPotential& p : part_potentials(weights, partition)) {
        PartSpread s;
        s.part = p.part;
        s.log_min = p.log_min;
        s.log_max = p.log_max;
        s.exponent = ln_n > 0 ? (p.log_max - p.log_min) / ln_n : 0.0;
        s.chain_holds = p.log_max <= ln_n + static_cast<double>(std::log(weights.w(p.part.left))) + lemma_tolerance;
        out.push_back(s);
    }
    return out;
}

}  // namespace driftlab
