// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: acceptance [--only 1,3,8] [--threads N]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "cli.hpp"
#include "driftlab/construction.hpp"
#include "driftlab/drift_estimate.hpp"
#include "driftlab/experiments.hpp"
#include "driftlab/families.hpp"
#include "driftlab/feasibility.hpp"
#include "driftlab/lemmas.hpp"
#include "driftlab/rng.hpp"
#include "oracle.hpp"

using namespace driftlab;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::size_t g_threads = 1;

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// Minimum drift factor over all non-optimal states, by brute force over
// every (state, mask) pair with tabulated f and Phi.
long double oracle_min_drift(const LinearObjective& f, const DriftWeights& w, double c) {
    const std::size_t n = f.n();
    const std::uint64_t states = std::uint64_t{1} << n;
    std::vector<long double> a(f.coefficients().begin(), f.coefficients().end());
    std::vector<long double> wv(w.values().begin(), w.values().end());
    std::vector<long double> fv(states), phi(states), prob(n + 1);
    for (std::uint64_t s = 0; s < states; ++s) {
        fv[s] = oracle::dot(a, s);
        phi[s] = oracle::dot(wv, s);
    }
    const long double p = static_cast<long double>(c) / n;
    for (std::size_t k = 0; k <= n; ++k)
        prob[k] = std::pow(p, static_cast<long double>(k)) * std::pow(1 - p, static_cast<long double>(n - k));
    long double best = INFINITY;
    for (std::uint64_t x = 1; x < states; ++x) {
        long double next = 0;
        for (std::uint64_t y = 0; y < states; ++y) {
            const std::uint64_t child = x ^ y;
            next += prob[__builtin_popcountll(y)] * phi[fv[child] <= fv[x] ? child : x];
        }
        best = std::min(best, (phi[x] - next) / phi[x]);
    }
    return best;
}

Verdict criterion1() {
    // Two-bit OneMax goldens, exact rationals 1 and 3/4.
    const auto om2 = generate_family({FamilyKind::onemax}, 2, 0);
    const auto con2 = construct(om2, default_params(1.0, 0.5));
    const long double g11 = exact_expected_phi_next(om2, con2.weights, BitString::from_string("11"), 1.0);
    const long double g01 = exact_expected_phi_next(om2, con2.weights, BitString::from_string("01"), 1.0);
    bool ok = std::fabs(g11 - 1.0L) <= 1e-12L && std::fabs(g01 - 0.75L) <= 1e-12L;
    std::ostringstream detail;
    detail << "goldens " << fmt(static_cast<double>(g11)) << "/" << fmt(static_cast<double>(g01));

    long double worst = INFINITY;
    long double max_rel = 0;
    std::size_t cells = 0;
    for (auto kind : {FamilyKind::onemax, FamilyKind::binval})
        for (std::size_t n : {6, 8, 10, 12})
            for (double c : {0.5, 1.0, 2.0, 4.0}) {
                const auto f = generate_family({kind}, n, 0);
                const auto con = construct(f, default_params(c, 0.5));
                FeasibilityOptions opts;
                opts.threads = g_threads;
                const auto report = verify_feasibility(f, con.weights, con.partition, c, opts);
                const long double ref = oracle_min_drift(f, con.weights, c);
                const long double rel = std::fabs(report.min_drift_factor - ref) / ref;
                max_rel = std::max(max_rel, rel);
                worst = std::min(worst, report.min_drift_factor);
                const bool cell_ok = report.states_checked == (std::uint64_t{1} << n) - 1 &&
                                     report.min_drift_factor > 0 && report.violations.empty() && rel <= 1e-9L;
                if (!cell_ok)
                    detail << "; bad cell " << to_string(kind) << " n=" << n << " c=" << c;
                ok = ok && cell_ok;
                ++cells;
            }
    detail << "; " << cells << " cells, min drift factor " << fmt(static_cast<double>(worst))
           << ", max rel diff to oracle " << fmt(static_cast<double>(max_rel));
    return {ok, detail.str()};
}

struct CorpusInstance {
    FamilyKind kind;
    std::size_t n;
    LinearObjective f;
    DriftParams params;
};

// 500 instances per (family kind, n). Even instances use the derived
// parameters; odd ones override K and gamma so that n^4 >= K^c and the
// damped-regime inequalities become applicable.
template <class Visit>
void for_each_corpus_instance(Visit&& visit) {
    const FamilyKind kinds[] = {FamilyKind::onemax, FamilyKind::binval, FamilyKind::uniform_random,
                                FamilyKind::lognormal_random, FamilyKind::mixed_regime};
    std::uint64_t index = 0;
    for (auto kind : kinds)
        for (std::size_t n : {50, 200, 1000})
            for (int k = 0; k < 500; ++k, ++index) {
                SplitMix64 rng(derive_seed(2024, index));
                const double c = 0.5 + 7.5 * rng.uniform();
                DriftParams p;
                if (k % 2 == 0) {
                    p = default_params(c, 0.5);
                } else {
                    const double ln_K_max = 4 * std::log(static_cast<double>(n)) / c;
                    const double ln_K = std::max(0.05, ln_K_max * (0.1 + 0.9 * rng.uniform()));
                    p = default_params(c, 0.5, ln_K, 0.01 + 0.24 * rng.uniform());
                }
                visit(CorpusInstance{kind, n, generate_family({kind}, n, rng.next_u64()), p});
            }
}

std::string independent_invariant_failure(const CorpusInstance& inst, const Construction& con) {
    const std::size_t n = inst.n;
    const auto& blocks = con.structure.blocks;
    // Miniblocks match the literal scan.
    std::vector<long double> a(inst.f.coefficients().begin(), inst.f.coefficients().end());
    const auto mb = oracle::miniblocks(a);
    if (mb.size() != con.structure.miniblocks.size()) return "miniblock count";
    for (std::size_t k = 0; k < mb.size(); ++k)
        if (con.structure.miniblocks[k].span.right != mb[k].first || con.structure.miniblocks[k].span.left != mb[k].second)
            return "miniblock boundary";
    // Blocks tile [1, n], consecutive blocks sharing one position.
    if (blocks.empty() || blocks.front().span.right != 1 || blocks.back().span.left != n) return "tiling ends";
    for (std::size_t k = 1; k < blocks.size(); ++k)
        if (blocks[k].span.right != blocks[k - 1].span.left) return "tiling overlap";
    // Long marks and separation: at least three short blocks between long ones.
    const double threshold = std::max(inst.params.gamma * static_cast<double>(n), 2.0);
    std::optional<std::size_t> last_long;
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        if (blocks[k].is_long != (static_cast<double>(blocks[k].span.length()) >= threshold)) return "long mark";
        if (!blocks[k].is_long) continue;
        if (last_long && k - *last_long - 1 < 3) return "long separation";
        last_long = k;
    }
    if (con.weights.w(1) != 1) return "w_1";
    for (std::size_t i = 2; i <= n; ++i)
        if (!(con.weights.w(i) >= con.weights.w(i - 1))) return "w monotone";
    if (con.partition.jumps.size() > 6 * static_cast<std::size_t>(std::ceil(1 / inst.params.gamma)))
        return "jump count";
    return {};
}

Verdict criterion2() {
    const auto start = std::chrono::steady_clock::now();
    std::size_t instances = 0, failures = 0, with_jumps = 0, with_long = 0;
    std::string first;
    for_each_corpus_instance([&](const CorpusInstance& inst) {
        const auto con = construct(inst.f, inst.params);
        auto violations = construction_violations(inst.f, con);
        const auto extra = independent_invariant_failure(inst, con);
        if (!extra.empty()) violations.push_back(extra);
        if (!violations.empty()) {
            if (failures++ == 0)
                first = std::string(to_string(inst.kind)) + " n=" + std::to_string(inst.n) + ": " + violations.front();
        }
        with_jumps += con.partition.jumps.empty() ? 0 : 1;
        with_long += std::any_of(con.structure.blocks.begin(), con.structure.blocks.end(),
                                 [](const Block& b) { return b.is_long; });
        ++instances;
    });
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream detail;
    detail << instances << " instances, " << failures << " nonconformant, " << with_jumps << " with jumps, "
           << with_long << " with long blocks, " << fmt(secs) << " s";
    if (!first.empty()) detail << "; first: " << first;
    return {failures == 0 && secs < 60, detail.str()};
}

Verdict criterion3() {
    std::size_t applicable[4] = {0, 0, 0, 0};
    std::size_t failed = 0;
    double min_slack = INFINITY;
    std::string first;
    for_each_corpus_instance([&](const CorpusInstance& inst) {
        const auto con = construct(inst.f, inst.params);
        const auto report = check_weight_lemmas(con.weights, con.structure, inst.params);
        for (const auto& s : report.summary) {
            applicable[static_cast<int>(s.lemma)] += s.applicable;
            failed += s.failed;
            if (s.applicable > 0) min_slack = std::min(min_slack, s.min_slack);
        }
        if (!report.all_hold() && first.empty())
            first = std::string(to_string(inst.kind)) + " n=" + std::to_string(inst.n);
    });
    std::ostringstream detail;
    bool covered = true;
    for (int k = 0; k < 4; ++k) {
        detail << to_string(static_cast<WeightLemma>(k)) << "=" << applicable[k] << " ";
        covered = covered && applicable[k] > 0;
    }
    detail << "checks, " << failed << " failed, min slack " << fmt(min_slack);
    if (!covered) detail << "; some inequality was never applicable";
    if (!first.empty()) detail << "; first failure: " << first;
    return {failed == 0 && covered, detail.str()};
}

Verdict criterion4() {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = 10;
    const FamilyKind kinds[] = {FamilyKind::uniform_random, FamilyKind::lognormal_random, FamilyKind::mixed_regime};
    SplitMix64 rng(404);
    std::size_t agree = 0, total = 0;
    long double max_oracle_gap = 0;
    for (int obj = 0; obj < 10; ++obj) {
        const auto f = generate_family({kinds[obj % 3]}, n, rng.next_u64());
        const auto con = construct(f, default_params(1.0, 0.5));
        std::vector<long double> a(f.coefficients().begin(), f.coefficients().end());
        std::vector<long double> w(con.weights.values().begin(), con.weights.values().end());
        for (int s = 0; s < 50; ++s) {
            const std::uint64_t packed = 1 + rng.below((std::uint64_t{1} << n) - 1);
            const BitString x = BitString::from_packed(packed, n);
            const long double exact = exact_expected_phi_next(f, con.weights, x, 1.0);
            const long double ref = oracle::expected_phi_next(a, w, 1.0, packed);
            max_oracle_gap = std::max(max_oracle_gap, std::fabs(exact - ref) / std::max(ref, 1.0L));
            const auto mc = mc_drift_estimate(f, con.weights, x, 1.0, 1000000, rng.next_u64());
            agree += std::fabs(mc.expected_phi_next - exact) <= 4 * mc.ci_halfwidth ? 1 : 0;
            ++total;
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double share = static_cast<double>(agree) / static_cast<double>(total);
    std::ostringstream detail;
    detail << agree << "/" << total << " within 4 half-widths (" << fmt(100 * share) << "%), exact vs oracle rel gap "
           << fmt(static_cast<double>(max_oracle_gap)) << ", " << fmt(secs) << " s";
    return {share >= 0.99 && max_oracle_gap <= 1e-12L && secs < 300, detail.str()};
}

Verdict criterion5() {
    const auto start = std::chrono::steady_clock::now();
    TailOptions opts;
    opts.reps = 10000;
    opts.lambdas = {1.0, 2.0, 3.0};
    opts.threads = g_threads;
    const auto r = tail_experiment({FamilyKind::onemax}, 10, 1.0, opts);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream detail;
    detail << "nu=" << fmt(r.nu) << " (" << r.nu_source << ")";
    for (const auto& row : r.rows)
        detail << "; lambda=" << fmt(row.lambda) << " T>" << row.threshold << ": " << fmt(row.empirical)
               << " vs " << fmt(row.bound + 3 * row.sigma);
    detail << "; " << fmt(secs) << " s";
    return {r.all_within && r.nu_source == "exhaustive" && r.truncated == 0 && secs < 60, detail.str()};
}

Verdict criterion6() {
    const std::vector<double> cs{0.5, 1.0, 2.0, 4.0, 8.0};
    std::vector<std::size_t> grid;
    for (std::size_t n = 128; n <= 8192; n *= 2) grid.push_back(n);
    ScalingOptions opts;
    opts.reps = 100;
    opts.threads = g_threads;
    bool ok = true;
    std::ostringstream detail;
    for (auto kind : {FamilyKind::onemax, FamilyKind::binval}) {
        const auto r = scaling_experiment({kind}, cs, grid, opts);
        ok = ok && r.truncated == 0;
        detail << to_string(kind) << " truncated=" << r.truncated << " ratios";
        for (const auto& p : r.plateaus) {
            detail << " c=" << fmt(p.c) << ":" << fmt(p.ratio);
            ok = ok && p.ratio <= 2.0;
        }
        detail << "; ";
    }
    return {ok, detail.str()};
}

Verdict criterion7() {
    LowerBoundOptions opts;
    opts.reps = 200;
    opts.threads = g_threads;
    bool ok = true;
    std::ostringstream detail;
    for (auto kind : {FamilyKind::onemax, FamilyKind::binval})
        for (double c : {1.0, 4.0}) {
            const auto r = lower_bound_experiment({kind}, 10000, c, opts);
            ok = ok && r.successes == 0;
            detail << to_string(kind) << " c=" << fmt(c) << " budget=" << r.budget << " successes=" << r.successes
                   << "; ";
        }
    return {ok, detail.str()};
}

Verdict criterion8() {
    const std::vector<std::vector<std::string>> invocations{
        {"construct", "--family", "mixed_regime", "--n", "300", "--c", "2", "--seed", "7"},
        {"verify", "--family", "uniform_random", "--n", "10", "--c", "1", "--seed", "3"},
        {"verify", "--family", "lognormal_random", "--n", "40", "--c", "1", "--mode", "sampled", "--samples", "2000",
         "--budget", "40"},
        {"lemmas", "--family", "mixed_regime", "--n", "200", "--c", "1", "--K", "2^4", "--gamma", "0.1",
         "--record-all"},
        {"run", "--family", "binval", "--n", "64", "--c", "2", "--reps", "20", "--seed", "11"},
        {"scaling", "--family", "uniform_random", "--n-grid", "16,32,64", "--c-list", "1,4", "--reps", "30"},
        {"tail", "--family", "onemax", "--n", "8", "--c", "1", "--reps", "500"},
        {"lower-bound", "--family", "binval", "--n", "500", "--c", "1", "--reps", "100"},
    };
    auto capture = [](std::vector<std::string> args, const std::string& threads) {
        args.insert(args.end(), {"--threads", threads, "--out", "-"});
        std::ostringstream out, err;
        const int code = cli::run_cli(args, out, err);
        return std::to_string(code) + "\n" + out.str();
    };
    std::size_t identical = 0;
    std::string first;
    for (const auto& args : invocations) {
        const auto a = capture(args, "1");
        const auto b = capture(args, "1");
        const auto c = capture(args, "4");
        if (a == b && a == c && a.size() > 4) ++identical;
        else if (first.empty()) first = args.front();
    }
    std::ostringstream detail;
    detail << identical << "/" << invocations.size() << " subcommand invocations byte-identical across repeats and "
           << "--threads 1/4";
    if (!first.empty()) detail << "; first mismatch: " << first;
    return {identical == invocations.size(), detail.str()};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance checks"};
    std::vector<int> only;
    g_threads = std::max(1u, std::thread::hardware_concurrency());
    app.add_option("--only", only, "criteria to run (default all)")->delimiter(',');
    app.add_option("--threads", g_threads, "worker threads for the experiments");
    CLI11_PARSE(app, argc, argv);

    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"exhaustive drift oracle", criterion1},   {"construction conformance", criterion2},
        {"weight inequalities", criterion3},       {"Monte Carlo vs exact", criterion4},
        {"drift tail bound", criterion5},          {"scaling plateau", criterion6},
        {"lower bound", criterion7},               {"determinism", criterion8},
    };
    const std::set<int> selected(only.begin(), only.end());
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const int id = static_cast<int>(k) + 1;
        if (!selected.empty() && !selected.count(id)) continue;
        Verdict v;
        try {
            v = criteria[k].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failures += v.pass ? 0 : 1;
        std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << criteria[k].first
                  << "): " << v.detail << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
