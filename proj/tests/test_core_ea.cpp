#include <doctest.h>

#include <cmath>
#include <numeric>

#include "driftlab/bitstring.hpp"
#include "driftlab/ea.hpp"
#include "driftlab/errors.hpp"
#include "driftlab/exact_sum.hpp"
#include "driftlab/families.hpp"
#include "driftlab/objective.hpp"
#include "driftlab/rng.hpp"

using namespace driftlab;

namespace {

struct ConstantUniform {
    double value;
    int draws = 0;
    double uniform() {
        ++draws;
        return value;
    }
};

LinearObjective binval(std::size_t n) { return generate_family({FamilyKind::binval}, n, 0); }
LinearObjective onemax(std::size_t n) { return generate_family({FamilyKind::onemax}, n, 0); }

}  // namespace

TEST_CASE("splitmix64 matches the reference stream") {
    SplitMix64 rng(0);
    CHECK(rng.next_u64() == 0xe220a8397b1dcdafULL);
    CHECK(rng.next_u64() == 0x6e789e6aa1b965f4ULL);
    CHECK(rng.next_u64() == 0x06c45d188009454fULL);
}

TEST_CASE("uniform and below stay in range") {
    SplitMix64 rng(7);
    for (int k = 0; k < 10000; ++k) {
        const double u = rng.uniform();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        CHECK(rng.below(13) < 13);
    }
}

TEST_CASE("derived seeds differ per index and are stable") {
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK(derive_seed(42, 9) == derive_seed(42, 9));
}

TEST_CASE("bit strings display x_n first") {
    const BitString x = BitString::from_string("101");
    CHECK(x(1));
    CHECK_FALSE(x(2));
    CHECK(x(3));
    CHECK(x.to_string() == "101");
    const BitString y = BitString::from_string("0011");
    CHECK(y.packed() == 3);
    CHECK(BitString::from_packed(3, 4) == y);
    CHECK(y.leftmost_one() == 2);
    CHECK(hamming_distance(x, BitString::from_string("010")) == 3);
}

TEST_CASE("normalize_objective examples") {
    SUBCASE("unsorted input is sorted with the permutation recorded") {
        const auto f = normalize_objective(std::vector<double>{3, 1, 2});
        CHECK(f.coefficients()[0] == 1);
        CHECK(f.coefficients()[1] == 2);
        CHECK(f.coefficients()[2] == 3);
        CHECK(f.provenance().permutation == std::vector<std::size_t>{1, 2, 0});
        CHECK_FALSE(f.provenance().is_identity());
    }
    SUBCASE("sorted input keeps the identity") {
        const auto f = normalize_objective(std::vector<double>{1, 1, 1});
        CHECK(f.n() == 3);
        CHECK(f.provenance().permutation == std::vector<std::size_t>{0, 1, 2});
        CHECK(f.provenance().is_identity());
    }
    SUBCASE("zeros are dropped and negatives flipped") {
        const auto f = normalize_objective(std::vector<double>{0, -2, 5});
        REQUIRE(f.n() == 2);
        CHECK(f.coefficients()[0] == 2);
        CHECK(f.coefficients()[1] == 5);
        CHECK(f.provenance().dropped_zero == std::vector<std::size_t>{0});
        CHECK(f.provenance().sign_flipped == std::vector<std::size_t>{1});
        CHECK(f.provenance().constant_offset == -2);
    }
    SUBCASE("all zero is degenerate") {
        CHECK_THROWS_AS((void)normalize_objective(std::vector<double>{0, 0}), DegenerateObjectiveError);
    }
    SUBCASE("empty and non-finite input is rejected") {
        CHECK_THROWS_AS((void)normalize_objective(std::vector<double>{}), ValidationError);
        CHECK_THROWS_AS((void)normalize_objective(std::vector<double>{1, NAN}), ValidationError);
    }
}

TEST_CASE("normalization preserves the objective up to the offset") {
    SplitMix64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t m = 1 + rng.below(8);
        std::vector<double> raw(m);
        for (auto& r : raw) r = static_cast<double>(static_cast<int>(rng.below(11)) - 5);
        raw[rng.below(m)] = 7;
        const auto f = normalize_objective(raw);
        for (std::uint64_t s = 0; s < (std::uint64_t{1} << m); ++s) {
            const BitString x = BitString::from_packed(s, m);
            double user = 0;
            for (std::size_t i = 1; i <= m; ++i) user += x(i) ? raw[i - 1] : 0.0;
            CHECK(static_cast<double>(evaluate(f, f.to_normalized(x)) + f.provenance().constant_offset) == user);
        }
    }
}

TEST_CASE("LinearObjective rejects invalid coefficients") {
    CHECK_THROWS_AS(LinearObjective(std::vector<Real>{}), ValidationError);
    CHECK_THROWS_AS(LinearObjective(std::vector<Real>{0, 1}), ValidationError);
    CHECK_THROWS_AS(LinearObjective(std::vector<Real>{2, 1}), ValidationError);
    CHECK_THROWS_AS(LinearObjective(std::vector<Real>{1, INFINITY}), ValidationError);
}

TEST_CASE("evaluate examples") {
    CHECK(evaluate(binval(3), BitString::from_string("101")) == 5);
    CHECK(evaluate(onemax(5), BitString::from_string("11111")) == 5);
    CHECK(evaluate(binval(7), BitString(7)) == 0);
    CHECK_THROWS_AS((void)evaluate(binval(3), BitString(4)), ValidationError);
}

TEST_CASE("exact_sum_sign resolves cancellation") {
    std::vector<Real> a{1e30L, 1, -1e30L};
    CHECK(exact_sum_sign(a) == 1);
    std::vector<Real> b{std::ldexp(1.0L, -80), 1, -1};
    CHECK(exact_sum_sign(b) == 1);
    std::vector<Real> c{3, -1, -2};
    CHECK(exact_sum_sign(c) == 0);
    std::vector<Real> d{std::ldexp(1.0L, 200), -std::ldexp(1.0L, 200), -std::ldexp(1.0L, -200)};
    CHECK(exact_sum_sign(d) == -1);
    CHECK(exact_sum_sign(std::span<const Real>{}) == 0);
}

TEST_CASE("flip_delta_sign agrees with evaluation on steep objectives") {
    const auto f = binval(300);
    SplitMix64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        BitString x = random_bitstring(300, rng);
        std::vector<std::uint32_t> flips;
        for (std::uint32_t i = 1; i <= 300; ++i)
            if (rng.below(50) == 0) flips.push_back(i);
        BitString y = x;
        for (auto i : flips) y.flip(i);
        // Leftmost changed bit decides for distinct powers of two.
        int expected = 0;
        for (auto i : flips) expected = y(i) ? 1 : -1;
        CHECK(flip_delta_sign(f, x, flips) == expected);
    }
}

TEST_CASE("select examples") {
    const auto f = binval(3);
    SUBCASE("ties accept the offspring") {
        const auto g = onemax(3);
        const BitString x = BitString::from_string("100");
        const BitString y = BitString::from_string("010");
        CHECK(&select(g, x, y) == &y);
    }
    SUBCASE("the optimum is always accepted") {
        const BitString x = BitString::from_string("111");
        const BitString zero(3);
        CHECK(&select(f, x, zero) == &zero);
    }
    SUBCASE("binval 100 vs 011") {
        const BitString x = BitString::from_string("100");
        const BitString y = BitString::from_string("011");
        CHECK(&select(f, x, y) == &y);
        CHECK(&select(f, y, x) == &y);
    }
}

TEST_CASE("absorption: from the optimum only the optimum is accepted") {
    const auto f = generate_family({FamilyKind::uniform_random}, 6, 5);
    const BitString zero(6);
    for (std::uint64_t s = 1; s < 64; ++s) {
        const BitString y = BitString::from_packed(s, 6);
        CHECK(select(f, zero, y) == zero);
    }
}

TEST_CASE("MutationParams preconditions") {
    CHECK_THROWS_AS(MutationParams(0.0, 4), ValidationError);
    CHECK_THROWS_AS(MutationParams(-1.0, 4), ValidationError);
    CHECK_THROWS_AS(MutationParams(5.0, 4), ValidationError);
    CHECK(MutationParams(4.0, 4).rate() == 1.0);
    CHECK(MutationParams(1.0, 4).rate() == 0.25);
}

TEST_CASE("mutate with forced streams") {
    const MutationParams params(1.0, 6);
    const BitString x = BitString::from_string("100110");
    SUBCASE("no flip") {
        ConstantUniform never{0.99};
        CHECK(mutate(x, params, never) == x);
        CHECK(never.draws == 6);
    }
    SUBCASE("all flip") {
        ConstantUniform always{0.0};
        CHECK(mutate(x, params, always).to_string() == "011001");
        CHECK(always.draws == 6);
    }
    CHECK(x.to_string() == "100110");
}

TEST_CASE("mutate statistics") {
    const std::size_t n = 4;
    const MutationParams params(1.0, n);
    const BitString x = BitString::from_string("0110");
    SplitMix64 rng(123);
    const int N = 100000;
    std::vector<int> flips(n + 1, 0);
    double distance = 0;
    for (int k = 0; k < N; ++k) {
        const BitString y = mutate(x, params, rng);
        distance += static_cast<double>(hamming_distance(x, y));
        for (std::size_t i = 1; i <= n; ++i) flips[i] += x(i) != y(i) ? 1 : 0;
    }
    CHECK(distance / N == doctest::Approx(1.0).epsilon(0.03));
    const double p = params.rate();
    for (std::size_t i = 1; i <= n; ++i)
        CHECK(std::fabs(flips[i] / double(N) - p) <= 4 * std::sqrt(p * (1 - p) / N));
}

TEST_CASE("flip sampler matches independent-bit mutation in distribution") {
    for (double c : {0.5, 1.0, 3.0}) {
        const std::size_t n = 12;
        const MutationParams params(c, n);
        FlipSampler sampler(params);
        SplitMix64 rng(99);
        const int N = 200000;
        std::vector<int> per_position(n + 1, 0);
        std::vector<int> count(n + 1, 0);
        std::vector<std::uint32_t> flips;
        for (int k = 0; k < N; ++k) {
            sampler.sample(rng, flips);
            std::vector<bool> seen(n + 1, false);
            for (auto pos : flips) {
                REQUIRE(pos >= 1);
                REQUIRE(pos <= n);
                REQUIRE_FALSE(seen[pos]);
                seen[pos] = true;
                ++per_position[pos];
            }
            ++count[flips.size()];
        }
        const double p = params.rate();
        for (std::size_t i = 1; i <= n; ++i)
            CHECK(std::fabs(per_position[i] / double(N) - p) <= 4 * std::sqrt(p * (1 - p) / N));
        // Count histogram against Bin(n, p).
        for (std::size_t k = 0; k <= n; ++k) {
            const double pmf = std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
                                        k * std::log(p) + (n - k) * std::log1p(-p));
            CHECK(std::fabs(count[k] / double(N) - pmf) <= 4 * std::sqrt(pmf * (1 - pmf) / N) + 1e-9);
        }
    }
}

TEST_CASE("default_max_iters") {
    CHECK(default_max_iters(1) == 50);
    CHECK(default_max_iters(100) == static_cast<std::uint64_t>(std::ceil(50 * 100 * std::log(100.0))));
}

TEST_CASE("run_ea from the optimum takes one evaluation") {
    const auto f = onemax(1);
    const MutationParams params(1.0, 1);
    const RunRecord r = run_ea_from(f, params, BitString(1), 5, 10);
    CHECK(r.optimisation_time == 1);
    CHECK_FALSE(r.truncated);
}

TEST_CASE("run_ea with n = 1 finishes quickly") {
    const auto f = onemax(1);
    const MutationParams params(1.0, 1);
    for (std::uint64_t s = 0; s < 20; ++s) {
        const RunRecord r = run_ea(f, params, s);
        CHECK(r.optimisation_time <= 2);
        CHECK(r.optimisation_time == 1 + r.initial_ones);
    }
}

TEST_CASE("run_ea is deterministic in the seed") {
    const auto f = generate_family({FamilyKind::mixed_regime}, 80, 4);
    const MutationParams params(2.0, 80);
    CHECK(run_ea(f, params, 77) == run_ea(f, params, 77));
    CHECK(run_ea(f, params, 77).seed == 77);
}

TEST_CASE("run_ea truncation") {
    const auto f = onemax(200);
    const MutationParams params(1.0, 200);
    const RunRecord r = run_ea(f, params, 1, 10);
    CHECK(r.truncated);
    CHECK(r.optimisation_time == 10);
    CHECK_THROWS_AS((void)run_ea(f, params, 1, 0), ValidationError);
}

TEST_CASE("fitness never increases along a trace") {
    const auto f = generate_family({FamilyKind::lognormal_random}, 40, 8);
    const MutationParams params(1.5, 40);
    SplitMix64 init(3);
    std::vector<BitString> trace;
    const RunRecord r = run_ea_from(f, params, random_bitstring(40, init), 17, 100000, &trace);
    REQUIRE_FALSE(r.truncated);
    REQUIRE(trace.size() == r.optimisation_time);
    for (std::size_t t = 1; t < trace.size(); ++t) CHECK(compare(f, trace[t - 1], trace[t]) <= 0);
    CHECK(trace.back().is_zero());
}

TEST_CASE("OneMax n = 64 mean optimisation time lies in [n ln n, 6 n ln n]") {
    const std::size_t n = 64;
    const auto f = onemax(n);
    const MutationParams params(1.0, n);
    double total = 0;
    for (std::uint64_t r = 0; r < 1000; ++r) {
        const RunRecord rec = run_ea(f, params, derive_seed(2024, r));
        REQUIRE_FALSE(rec.truncated);
        total += static_cast<double>(rec.optimisation_time);
    }
    const double mean = total / 1000;
    const double nlogn = n * std::log(double(n));
    CHECK(mean >= nlogn);
    CHECK(mean <= 6 * nlogn);
}
