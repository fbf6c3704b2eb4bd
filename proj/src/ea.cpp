#include "driftlab/ea.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "driftlab/errors.hpp"

namespace driftlab {

MutationParams::MutationParams(double c, std::size_t n) : c_(c), n_(n), rate_(0.0) {
    if (n == 0) throw ValidationError("mutation: problem size n must be positive");
    if (!(c > 0.0) || !std::isfinite(c)) throw ValidationError("mutation: constant c must be positive");
    rate_ = c / static_cast<double>(n);
    if (rate_ > 1.0)
        throw ValidationError("mutation: rate c/n = " + std::to_string(rate_) + " exceeds 1 (c must be <= n)");
}

FlipSampler::FlipSampler(const MutationParams& params) : n_(params.n()), stamp_(params.n() + 1, 0) {
    const double p = params.rate();
    const auto n = static_cast<double>(n_);
    if (p >= 1.0) {
        cdf_.assign(n_ + 1, 0.0);
        cdf_.back() = 1.0;
        return;
    }
    // log pmf by the ratio recursion, accumulated until the tail is below
    // double resolution.
    const double log_odds = std::log(p) - std::log1p(-p);
    double log_pmf = n * std::log1p(-p);
    double total = 0.0;
    for (std::size_t k = 0; k <= n_; ++k) {
        total += std::exp(log_pmf);
        cdf_.push_back(total);
        if (total >= 1.0 - 0x1.0p-54 && static_cast<double>(k) > n * p) break;
        log_pmf += std::log((n - static_cast<double>(k)) / static_cast<double>(k + 1)) + log_odds;
    }
    cdf_.back() = 1.0;
}

void FlipSampler::sample(SplitMix64& rng, std::vector<std::uint32_t>& flips) {
    flips.clear();
    const double u = rng.uniform();
    const auto count = static_cast<std::size_t>(std::upper_bound(cdf_.begin(), cdf_.end(), u) - cdf_.begin());
    if (count == 0) return;

    if (++epoch_ == 0) {
        std::fill(stamp_.begin(), stamp_.end(), 0);
        epoch_ = 1;
    }
    // Floyd's algorithm over positions 1..n.
    for (std::size_t j = n_ - count + 1; j <= n_; ++j) {
        auto t = static_cast<std::uint32_t>(1 + rng.below(j));
        if (stamp_[t] == epoch_) t = static_cast<std::uint32_t>(j);
        stamp_[t] = epoch_;
        flips.push_back(t);
    }
}

std::uint64_t default_max_iters(std::size_t n) {
    const auto nn = static_cast<double>(n);
    const auto cap = static_cast<std::uint64_t>(std::ceil(50.0 * nn * std::log(nn)));
    return std::max<std::uint64_t>(cap, 50);
}

BitString random_bitstring(std::size_t n, SplitMix64& rng) {
    BitString x(n);
    auto& bits = x.raw();
    for (std::size_t base = 0; base < n; base += 64) {
        const std::uint64_t word = rng.next_u64();
        for (std::size_t k = 0; k < 64 && base + k < n; ++k) bits[base + k] = static_cast<std::uint8_t>((word >> k) & 1U);
    }
    return x;
}

namespace {

RunRecord iterate(const LinearObjective& f, const MutationParams& params, BitString x, SplitMix64& rng,
                  std::uint64_t max_iters, std::vector<BitString>* trace) {
    if (max_iters == 0) throw ValidationError("run_ea: max_iters must be at least 1");
    if (x.size() != f.n() || params.n() != f.n()) throw ValidationError("run_ea: size mismatch");

    RunRecord record;
    record.initial_ones = x.count_ones();
    std::size_t ones = record.initial_ones;
    std::uint64_t evaluations = 1;
    if (trace) trace->push_back(x);

    FlipSampler sampler(params);
    std::vector<std::uint32_t> flips;
    auto& bits = x.raw();
    while (ones != 0) {
        if (evaluations >= max_iters) {
            record.truncated = true;
            break;
        }
        sampler.sample(rng, flips);
        ++evaluations;
        if (!flips.empty() && flip_delta_sign(f, x, flips) <= 0) {
            for (auto pos : flips) {
                auto& b = bits[pos - 1];
                ones = b ? ones - 1 : ones + 1;
                b ^= 1U;
            }
        }
        if (trace) trace->push_back(x);
    }
    record.optimisation_time = evaluations;
    return record;
}

}  // namespace

RunRecord run_ea(const LinearObjective& f, const MutationParams& params, std::uint64_t seed,
                 std::optional<std::uint64_t> max_iters) {
    SplitMix64 rng(seed);
    BitString x = random_bitstring(f.n(), rng);
    RunRecord record = iterate(f, params, std::move(x), rng, max_iters.value_or(default_max_iters(f.n())), nullptr);
    record.seed = seed;
    return record;
}

RunRecord run_ea_from(const LinearObjective& f, const MutationParams& params, BitString initial, std::uint64_t seed,
                      std::uint64_t max_iters, std::vector<BitString>* trace) {
    SplitMix64 rng(seed);
    RunRecord record = iterate(f, params, std::move(initial), rng, max_iters, trace);
    record.seed = seed;
    return record;
}

}  // namespace driftlab
