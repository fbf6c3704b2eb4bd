#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "driftlab/construction.hpp"
#include "driftlab/ea.hpp"
#include "driftlab/errors.hpp"
#include "driftlab/experiments.hpp"
#include "driftlab/families.hpp"
#include "driftlab/feasibility.hpp"
#include "driftlab/lemmas.hpp"
#include "driftlab/parallel.hpp"
#include "driftlab/rng.hpp"
#include "driftlab/serialize.hpp"

namespace driftlab::cli {

namespace {

struct Config {
    std::string command;
    std::string family = "onemax";
    std::vector<double> coefficients;
    std::optional<double> sigma;
    std::optional<std::size_t> n;
    std::vector<std::size_t> n_grid;
    std::optional<double> c;
    std::vector<double> c_list;
    double epsilon = 0.5;
    std::string K;
    std::optional<double> gamma;
    std::uint64_t seed = 1;
    std::size_t threads = 0;
    std::optional<std::size_t> reps;
    std::optional<std::uint64_t> max_iters;
    std::string mode;
    std::uint64_t budget = 0;
    std::uint64_t samples = 100000;
    bool record_all = false;
    std::vector<double> lambdas = {1.0, 2.0, 3.0};
    std::optional<double> nu;
    double plateau_tolerance = default_plateau_tolerance;
    std::string out;
    std::string format = "json";
};

struct Outcome {
    Json result;
    std::string summary;
    int code = ok;
    std::function<void(std::ostream&)> csv;
};

/// "2^N" or a plain number > 1; returns ln K.
double parse_K(const std::string& text) {
    try {
        std::size_t used = 0;
        if (text.rfind("2^", 0) == 0) {
            const double exponent = std::stod(text.substr(2), &used);
            if (used != text.size() - 2 || !(exponent > 0.0) || !std::isfinite(exponent)) throw std::invalid_argument("");
            return exponent * std::log(2.0);
        }
        const double value = std::stod(text, &used);
        if (used != text.size() || !(value > 1.0) || !std::isfinite(value)) throw std::invalid_argument("");
        return std::log(value);
    } catch (const std::exception&) {
        throw ValidationError("--K must be a number > 1 or of the form 2^N with N > 0 (got '" + text + "')");
    }
}

FamilySpec family_spec(const Config& cfg) {
    FamilySpec spec;
    spec.kind = parse_family_kind(cfg.family);
    spec.sigma = cfg.sigma;
    if (spec.kind == FamilyKind::explicit_list) {
        if (cfg.coefficients.empty()) throw ValidationError("--family explicit requires --coefficients");
        spec.coefficients = cfg.coefficients;
    } else if (!cfg.coefficients.empty()) {
        throw ValidationError("--coefficients is only valid with --family explicit");
    }
    if (cfg.sigma && spec.kind != FamilyKind::lognormal_random)
        throw ValidationError("--sigma is only valid with --family lognormal_random");
    return spec;
}

std::size_t require_n(const Config& cfg, const FamilySpec& spec) {
    if (cfg.n) {
        if (*cfg.n < 1) throw ValidationError("--n must be >= 1");
        return *cfg.n;
    }
    if (spec.kind == FamilyKind::explicit_list) {
        std::size_t nonzero = 0;
        for (double a : spec.coefficients) nonzero += a != 0.0 ? 1 : 0;
        return nonzero;
    }
    throw ValidationError("--n is required");
}

double require_c(const Config& cfg) {
    if (!cfg.c) throw ValidationError("--c is required");
    return *cfg.c;
}

DriftParams drift_params(const Config& cfg, double c) {
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw ValidationError("--epsilon must lie in (0, 1)");
    std::optional<double> ln_K;
    if (!cfg.K.empty()) ln_K = parse_K(cfg.K);
    if (cfg.gamma && !(*cfg.gamma > 0.0 && *cfg.gamma <= 0.5)) throw ValidationError("--gamma must lie in (0, 1/2]");
    try {
        return default_params(c, cfg.epsilon, ln_K, cfg.gamma);
    } catch (const UnachievableParamsError& e) {
        std::ostringstream msg;
        msg << e.what() << " (raw gamma " << format_double(e.raw_gamma()) << "; pass --gamma to override)";
        throw ValidationError(msg.str());
    }
}

std::uint64_t instance_seed(const Config& cfg) { return derive_seed(derive_seed(cfg.seed, 0), family_stream); }

Json config_json(const Config& cfg) {
    Json j = {{"family", cfg.family}, {"seed", cfg.seed}, {"epsilon", cfg.epsilon}};
    if (!cfg.coefficients.empty()) j["coefficients"] = cfg.coefficients;
    if (cfg.sigma) j["sigma"] = *cfg.sigma;
    if (cfg.n) j["n"] = *cfg.n;
    if (!cfg.n_grid.empty()) j["n_grid"] = cfg.n_grid;
    if (cfg.c) j["c"] = *cfg.c;
    if (!cfg.c_list.empty()) j["c_list"] = cfg.c_list;
    if (!cfg.K.empty()) j["K"] = cfg.K;
    if (cfg.gamma) j["gamma"] = *cfg.gamma;
    if (cfg.reps) j["reps"] = *cfg.reps;
    if (cfg.max_iters) j["max_iters"] = *cfg.max_iters;
    if (cfg.command == "verify") {
        j["mode"] = cfg.mode;
        j["budget"] = cfg.budget;
        j["samples"] = cfg.samples;
    }
    if (cfg.command == "tail") {
        j["lambdas"] = cfg.lambdas;
        if (cfg.nu) j["nu"] = *cfg.nu;
    }
    if (cfg.command == "scaling") j["plateau_tolerance"] = cfg.plateau_tolerance;
    return j;
}

Outcome cmd_construct(const Config& cfg) {
    const FamilySpec spec = family_spec(cfg);
    const std::size_t n = require_n(cfg, spec);
    const double c = require_c(cfg);
    const MutationParams mutation(c, n);
    const DriftParams params = drift_params(cfg, c);
    const LinearObjective f = generate_family(spec, n, instance_seed(cfg));
    const Construction con = construct(f, params);
    const auto violations = construction_violations(f, con);

    Outcome o;
    o.result = to_json(con);
    o.result["objective"] = to_json(f);
    o.result["violations"] = violations;
    std::size_t long_blocks = 0;
    for (const auto& b : con.structure.blocks) long_blocks += b.is_long ? 1 : 0;
    std::ostringstream s;
    s << "construct: n=" << n << " blocks=" << con.structure.blocks.size() << " long=" << long_blocks
      << " jumps=" << con.partition.jumps.size() << " parts=" << con.partition.parts.size()
      << " warnings=" << con.warnings.size() << " violations=" << violations.size();
    o.summary = s.str();
    if (!violations.empty()) o.code = violation_found;
    else if (!con.warnings.empty()) o.code = construction_warning;
    return o;
}

Outcome cmd_verify(const Config& cfg) {
    const FamilySpec spec = family_spec(cfg);
    const std::size_t n = require_n(cfg, spec);
    const double c = require_c(cfg);
    const MutationParams mutation(c, n);
    const DriftParams params = drift_params(cfg, c);

    FeasibilityOptions opts;
    const std::string mode = cfg.mode.empty() ? (n <= exhaustive_state_cap ? "exhaustive" : "sampled") : cfg.mode;
    if (mode == "exhaustive") {
        if (n > exhaustive_state_cap)
            throw ValidationError("--mode exhaustive requires n <= " + std::to_string(exhaustive_state_cap));
        opts.mode = VerificationMode::exhaustive;
    } else if (mode == "sampled") {
        opts.mode = VerificationMode::sampled;
    } else {
        throw ValidationError("--mode must be exhaustive or sampled");
    }
    if (cfg.samples < 1000) throw ValidationError("--samples must be >= 1000");
    opts.budget = cfg.budget;
    opts.samples_per_state = cfg.samples;
    opts.seed = derive_seed(cfg.seed, 1);
    opts.threads = cfg.threads;

    const LinearObjective f = generate_family(spec, n, instance_seed(cfg));
    const Construction con = construct(f, params);
    const FeasibilityReport report = verify_feasibility(f, con.weights, con.partition, c, opts);
    const DefinitionReport definition = check_definition_conditions(con.weights);

    Outcome o;
    o.result = to_json(report);
    o.result["definition"] = to_json(definition);
    o.result["construction_warnings"] = con.warnings;
    std::ostringstream s;
    s << "verify: n=" << n << " c=" << format_double(c) << " mode=" << mode << " states=" << report.states_checked
      << " min_drift_factor=" << format_double(static_cast<double>(report.min_drift_factor))
      << " implied_nu=" << format_double(static_cast<double>(report.implied_nu))
      << " violations=" << report.violations.size() << (report.informational ? " (informational: n < n0)" : "");
    o.summary = s.str();
    if (!report.violations.empty() || !definition.passed()) o.code = violation_found;
    return o;
}

Outcome cmd_lemmas(const Config& cfg) {
    const FamilySpec spec = family_spec(cfg);
    const std::size_t n = require_n(cfg, spec);
    const double c = require_c(cfg);
    const MutationParams mutation(c, n);
    const DriftParams params = drift_params(cfg, c);
    const LinearObjective f = generate_family(spec, n, instance_seed(cfg));
    const Construction con = construct(f, params);
    const LemmaReport report = check_weight_lemmas(con.weights, con.structure, params, cfg.record_all);
    const auto spreads = check_partition_polynomiality(con.weights, con.partition);

    Outcome o;
    o.result = to_json(report);
    o.result["partition_spread"] = to_json(spreads);
    bool chains = true;
    for (const auto& sp : spreads) chains = chains && sp.chain_holds;
    std::size_t failed = 0;
    for (const auto& sm : report.summary) failed += sm.failed;
    std::ostringstream s;
    s << "lemmas: n=" << n << " applicable=" << report.applicable() << " failed=" << failed
      << " parts=" << spreads.size() << " chains=" << (chains ? "ok" : "broken");
    o.summary = s.str();
    if (failed != 0 || !chains) o.code = violation_found;
    return o;
}

Outcome cmd_run(const Config& cfg) {
    const FamilySpec spec = family_spec(cfg);
    const std::size_t n = require_n(cfg, spec);
    const double c = require_c(cfg);
    const MutationParams mutation(c, n);
    const std::size_t reps = cfg.reps.value_or(1);
    if (reps < 1) throw ValidationError("--reps must be >= 1");
    if (cfg.max_iters && *cfg.max_iters == 0) throw ValidationError("--max-iters must be >= 1");
    const std::uint64_t cap = cfg.max_iters.value_or(default_max_iters(n));

    const std::uint64_t cell_seed = derive_seed(cfg.seed, 0);
    const LinearObjective f = generate_family(spec, n, derive_seed(cell_seed, family_stream));
    auto runs = std::make_shared<std::vector<RunRecord>>(reps);
    parallel_for(reps, cfg.threads,
                 [&](std::size_t r) { (*runs)[r] = run_ea(f, mutation, derive_seed(cell_seed, r), cap); });
    const CellSummary summary = summarize_runs(*runs, n);

    Outcome o;
    Json list = Json::array();
    for (const auto& r : *runs) list.push_back(to_json(r));
    o.result = {{"n", n}, {"c", c}, {"max_iters", cap}, {"runs", list}};
    o.result["summary"] = {{"mean", summary.mean},
                           {"median", summary.median},
                           {"median_normalized", summary.median_normalized},
                           {"truncated", summary.truncated}};
    std::ostringstream s;
    s << "run: n=" << n << " c=" << format_double(c) << " reps=" << reps << " median_T=" << format_double(summary.median)
      << " truncated=" << summary.truncated;
    o.summary = s.str();
    if (summary.truncated != 0) o.code = inconclusive;
    const std::string family = cfg.family;
    o.csv = [runs, family, n, c](std::ostream& os) { write_runs_csv(os, family, n, c, *runs); };
    return o;
}

Outcome cmd_scaling(const Config& cfg) {
    const FamilySpec spec = family_spec(cfg);
    if (cfg.n_grid.empty()) throw ValidationError("--n-grid is required");
    if (cfg.c_list.empty()) throw ValidationError("--c-list is required");
    for (double c : cfg.c_list)
        for (std::size_t n : cfg.n_grid) {
            if (n < 2) throw ValidationError("--n-grid entries must be >= 2");
            const MutationParams check(c, n);
        }
    if (spec.kind == FamilyKind::explicit_list) throw ValidationError("scaling does not accept --family explicit");
    ScalingOptions opts;
    opts.reps = cfg.reps.value_or(100);
    opts.master_seed = cfg.seed;
    opts.threads = cfg.threads;
    opts.max_iters = cfg.max_iters;
    opts.plateau_tolerance = cfg.plateau_tolerance;
    auto result = std::make_shared<ExperimentResult>(scaling_experiment(spec, cfg.c_list, cfg.n_grid, opts));

    Outcome o;
    o.result = to_json(*result);
    std::ostringstream s;
    s << "scaling: family=" << result->family << " cells=" << result->cells.size() << " truncated=" << result->truncated;
    for (const auto& p : result->plateaus)
        s << " c=" << format_double(p.c) << ":ratio=" << format_double(p.ratio) << (p.within_tolerance ? "" : "!");
    o.summary = s.str();
    if (result->inconclusive) o.code = inconclusive;
    o.csv = [result](std::ostream& os) { write_runs_csv(os, *result); };
    return o;
}

Outcome cmd_tail(const Config& cfg) {
    const FamilySpec spec = family_spec(cfg);
    const std::size_t n = require_n(cfg, spec);
    const double c = require_c(cfg);
    const MutationParams mutation(c, n);
    if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw ValidationError("--epsilon must lie in (0, 1)");
    TailOptions opts;
    opts.reps = cfg.reps.value_or(10000);
    opts.lambdas = cfg.lambdas;
    opts.master_seed = cfg.seed;
    opts.threads = cfg.threads;
    opts.nu = cfg.nu;
    opts.epsilon = cfg.epsilon;
    const TailResult result = tail_experiment(spec, n, c, opts);

    Outcome o;
    o.result = to_json(result);
    std::ostringstream s;
    s << "tail: n=" << n << " c=" << format_double(c) << " nu=" << format_double(result.nu) << " (" << result.nu_source
      << ")";
    for (const auto& row : result.rows)
        s << " lambda=" << format_double(row.lambda) << ":" << format_double(row.empirical) << "<="
          << format_double(row.bound) << (row.within ? "" : "!");
    o.summary = s.str();
    if (result.truncated != 0) o.code = inconclusive;
    if (!result.all_within) o.code = violation_found;
    return o;
}

Outcome cmd_lower_bound(const Config& cfg) {
    const FamilySpec spec = family_spec(cfg);
    const std::size_t n = require_n(cfg, spec);
    const double c = require_c(cfg);
    const MutationParams mutation(c, n);
    LowerBoundOptions opts;
    opts.reps = cfg.reps.value_or(200);
    opts.master_seed = cfg.seed;
    opts.threads = cfg.threads;
    const LowerBoundResult result = lower_bound_experiment(spec, n, c, opts);

    Outcome o;
    o.result = to_json(result);
    std::ostringstream s;
    s << "lower-bound: n=" << n << " c=" << format_double(c) << " T=" << format_double(result.threshold)
      << " successes=" << result.successes << "/" << result.reps
      << (result.informational ? " (informational: n < " + std::to_string(lower_bound_min_n) + ")" : "");
    o.summary = s.str();
    if (!result.consistent && !result.informational) o.code = violation_found;
    return o;
}

void add_common(CLI::App* sub, Config& cfg) {
    sub->add_option("--family", cfg.family,
                    "objective family: onemax | binval (n <= 16383) | uniform_random (n^3 < 2^53) | "
                    "lognormal_random | mixed_regime | explicit")
        ->capture_default_str();
    sub->add_option("--coefficients", cfg.coefficients,
                    "comma-separated coefficients for --family explicit; not all zero, finite")
        ->delimiter(',');
    sub->add_option("--sigma", cfg.sigma, "lognormal_random spread; >= 0, default ln n");
    sub->add_option("--seed", cfg.seed, "master seed; any unsigned 64-bit integer")->capture_default_str();
    sub->add_option("--threads", cfg.threads,
                    "worker threads; >= 1, default $DRIFTLAB_THREADS or the hardware concurrency; "
                    "results do not depend on it");
    sub->add_option("--out", cfg.out,
                    "output path for the JSON/CSV document; '-' writes it to stdout and moves the summary to "
                    "stderr; omitted writes only the summary");
    sub->add_option("--format", cfg.format, "json | csv (csv only for run and scaling)")->capture_default_str();
}

void add_n_c(CLI::App* sub, Config& cfg) {
    sub->add_option("--n", cfg.n, "problem size; integer >= 1 with c/n <= 1 (defaults to the list length for explicit)");
    sub->add_option("--c", cfg.c, "mutation constant, p = c/n; c > 0 and c <= n");
}

void add_drift(CLI::App* sub, Config& cfg) {
    sub->add_option("--epsilon", cfg.epsilon, "drift slack epsilon; 0 < epsilon < 1")->capture_default_str();
    sub->add_option("--K", cfg.K,
                    "damping base K; number > 1 or 2^N with N > 0; default: smallest power of two with "
                    "2/ln K <= e^{-c} epsilon / 16");
    sub->add_option("--gamma", cfg.gamma, "long-block fraction gamma; 0 < gamma <= 1/2; default derived from K, c, epsilon");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Config cfg;
    CLI::App app{"Adaptive drift construction, verification and runtime experiments for the (1+1) EA"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "print help for every subcommand");

    auto* construct_cmd = app.add_subcommand("construct", "build blocks, weights and the fitness partition");
    auto* verify_cmd = app.add_subcommand("verify", "check the drift conditions state by state");
    auto* lemmas_cmd = app.add_subcommand("lemmas", "check the weight-sum inequalities and partition spreads");
    auto* run_cmd = app.add_subcommand("run", "run the (1+1) EA");
    auto* scaling_cmd = app.add_subcommand("scaling", "runtime scaling over an n grid and c list");
    auto* tail_cmd = app.add_subcommand("tail", "empirical tail of the optimisation time against e^{-lambda}");
    auto* lower_cmd = app.add_subcommand("lower-bound", "count runs finishing within n ln n / (2 (max(1, c) + 1))");

    for (auto* sub : {construct_cmd, verify_cmd, lemmas_cmd, run_cmd, scaling_cmd, tail_cmd, lower_cmd})
        add_common(sub, cfg);
    for (auto* sub : {construct_cmd, verify_cmd, lemmas_cmd, run_cmd, tail_cmd, lower_cmd}) add_n_c(sub, cfg);
    for (auto* sub : {construct_cmd, verify_cmd, lemmas_cmd}) add_drift(sub, cfg);
    tail_cmd->add_option("--epsilon", cfg.epsilon, "drift slack epsilon for Phi_max and nu; 0 < epsilon < 1")
        ->capture_default_str();

    verify_cmd->add_option("--mode", cfg.mode, "exhaustive (n <= 12) | sampled; default exhaustive when n <= 12");
    verify_cmd->add_option("--budget", cfg.budget, "maximum states to check; 0 = no limit")->capture_default_str();
    verify_cmd->add_option("--samples", cfg.samples, "Monte Carlo samples per state when n > 20; >= 1000")
        ->capture_default_str();
    lemmas_cmd->add_flag("--record-all", cfg.record_all, "list every check, not only failures");

    run_cmd->add_option("--reps", cfg.reps, "independent runs; >= 1, default 1");
    run_cmd->add_option("--max-iters", cfg.max_iters, "evaluation cap per run; >= 1, default ceil(50 n ln n)");

    scaling_cmd->add_option("--n-grid", cfg.n_grid, "comma-separated sizes; strictly increasing, each >= 2 and >= c")
        ->delimiter(',');
    scaling_cmd->add_option("--c-list", cfg.c_list, "comma-separated mutation constants; each > 0")->delimiter(',');
    scaling_cmd->add_option("--reps", cfg.reps, "runs per cell; >= 30, default 100");
    scaling_cmd->add_option("--max-iters", cfg.max_iters,
                            "evaluation cap per run; >= 1, default ceil(50 max(1, e^c/c) n ln n)");
    scaling_cmd->add_option("--plateau-tolerance", cfg.plateau_tolerance,
                            "allowed max/min of median T/(n ln n) over the grid; >= 1")
        ->capture_default_str();

    tail_cmd->add_option("--reps", cfg.reps, "runs; >= 1, default 10000");
    tail_cmd->add_option("--lambdas", cfg.lambdas, "comma-separated lambda grid; each > 0")
        ->delimiter(',')
        ->capture_default_str();
    tail_cmd->add_option("--nu", cfg.nu,
                         "drift constant nu; >= 1; default measured exhaustively (n <= 12) or extrapolated "
                         "linearly from n = 12");

    lower_cmd->add_option("--reps", cfg.reps, "runs; >= 100, default 200");

    std::vector<const char*> argv{"driftlab"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return validation_error;
    }

    for (auto* sub : app.get_subcommands()) cfg.command = sub->get_name();
    if (cfg.threads == 0) cfg.threads = default_thread_count();

    Outcome outcome;
    try {
        if (cfg.format != "json" && cfg.format != "csv") throw ValidationError("--format must be json or csv");
        if (cfg.format == "csv" && cfg.command != "run" && cfg.command != "scaling")
            throw ValidationError("--format csv is only available for run and scaling");
        if (cfg.command == "construct") outcome = cmd_construct(cfg);
        else if (cfg.command == "verify") outcome = cmd_verify(cfg);
        else if (cfg.command == "lemmas") outcome = cmd_lemmas(cfg);
        else if (cfg.command == "run") outcome = cmd_run(cfg);
        else if (cfg.command == "scaling") outcome = cmd_scaling(cfg);
        else if (cfg.command == "tail") outcome = cmd_tail(cfg);
        else outcome = cmd_lower_bound(cfg);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return validation_error;
    } catch (const CapExceededError& e) {
        err << "error: " << e.what() << '\n';
        return validation_error;
    }

    const Json document = {{"schema_version", schema_version},
                           {"command", cfg.command},
                           {"config", config_json(cfg)},
                           {"result", outcome.result},
                           {"exit_code", outcome.code}};
    auto write_document = [&](std::ostream& os) {
        if (cfg.format == "csv") outcome.csv(os);
        else os << dump(document);
    };
    if (cfg.out.empty()) {
        out << outcome.summary << '\n';
    } else if (cfg.out == "-") {
        write_document(out);
        err << outcome.summary << '\n';
    } else {
        std::ofstream file(cfg.out, std::ios::binary);
        if (!file) {
            err << "error: cannot open '" << cfg.out << "' for writing\n";
            return validation_error;
        }
        write_document(file);
        out << outcome.summary << '\n';
    }
    return outcome.code;
}

}  // namespace driftlab::cli
