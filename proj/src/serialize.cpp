#include "driftlab/serialize.hpp"

#include <charconv>
#include <cmath>

namespace driftlab {

namespace {

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json number(Real v) { return number(static_cast<double>(v)); }

Json interval(const Interval& s) { return Json::array({s.right, s.left}); }

}  // namespace

Json log_encoded(Real v) {
    const int sign = v > 0 ? 1 : (v < 0 ? -1 : 0);
    return {{"log_value", sign == 0 ? Json(nullptr) : number(std::log(std::fabs(v)))}, {"sign", sign}};
}

Json to_json(const DriftParams& p) {
    return {{"epsilon", number(p.epsilon)}, {"ln_K", number(p.ln_K)}, {"log2_K", number(p.log2_K())},
            {"gamma", number(p.gamma)},     {"c", number(p.c)},       {"n0", p.n0},
            {"derived", p.derived}};
}

Json to_json(const LinearObjective& f) {
    Json coeffs = Json::array();
    for (Real a : f.coefficients()) coeffs.push_back(log_encoded(a));
    const auto& prov = f.provenance();
    return {{"n", f.n()},
            {"coefficients", coeffs},
            {"normalization",
             {{"identity", prov.is_identity()},
              {"permutation", prov.permutation},
              {"dropped_zero", prov.dropped_zero},
              {"sign_flipped", prov.sign_flipped},
              {"constant_offset", number(prov.constant_offset)},
              {"raw_size", prov.raw_size}}}};
}

Json to_json(const Construction& c) {
    const BlockStructure& s = c.structure;
    Json miniblocks = Json::array();
    for (const auto& m : s.miniblocks)
        miniblocks.push_back({{"span", interval(m.span)}, {"closed_by_threshold", m.closed_by_threshold}});
    Json blocks = Json::array();
    for (const auto& b : s.blocks)
        blocks.push_back({{"span", interval(b.span)},
                          {"length", b.span.length()},
                          {"is_long", b.is_long},
                          {"regime", to_string(b.regime)},
                          {"merged_from", b.merged_from}});
    Json merges = Json::array();
    for (const auto& m : s.merge_log)
        merges.push_back({{"left_long", interval(m.left_long)},
                          {"right_long", interval(m.right_long)},
                          {"absorbed_short", m.absorbed_short},
                          {"result", interval(m.result)}});
    Json weights = Json::array();
    for (Real w : c.weights.values()) weights.push_back(log_encoded(w));
    Json parts = Json::array();
    for (const auto& p : c.partition.parts) parts.push_back(interval(p));
    return {{"n", s.n},
            {"params", to_json(c.weights.params())},
            {"long_threshold", number(s.long_threshold)},
            {"miniblocks", miniblocks},
            {"blocks", blocks},
            {"merge_log", merges},
            {"weights", weights},
            {"phi_max", log_encoded(c.weights.total())},
            {"partition", {{"jumps", c.partition.jumps}, {"parts", parts}, {"k_bound", c.partition.k_bound}}},
            {"warnings", c.warnings}};
}

Json to_json(const FeasibilityReport& r) {
    Json violations = Json::array();
    for (const auto& v : r.violations)
        violations.push_back({{"state", v.state.to_string()}, {"drift_factor", number(v.drift_factor)}});
    Json estimates = Json::array();
    for (const auto& e : r.estimates)
        estimates.push_back({{"state", e.state.to_string()},
                             {"phi", log_encoded(e.phi_value)},
                             {"drift_factor", number(e.drift_factor)},
                             {"method", to_string(e.method)},
                             {"samples", e.samples},
                             {"ci_halfwidth_relative",
                              e.phi_value > 0 ? number(e.ci_halfwidth / e.phi_value) : Json(nullptr)}});
    return {{"n", r.n},
            {"c", number(r.c)},
            {"mode", to_string(r.mode)},
            {"method", to_string(r.method)},
            {"states_checked", r.states_checked},
            {"partial", r.partial},
            {"min_drift_factor", number(r.min_drift_factor)},
            {"argmin", r.argmin.to_string()},
            {"implied_nu", number(r.implied_nu)},
            {"target_delta", number(r.target_delta)},
            {"meets_target", r.meets_target},
            {"informational", r.informational},
            {"n0", r.n0},
            {"violations", violations},
            {"estimates", estimates}};
}

Json to_json(const DefinitionReport& r) {
    return {{"phi_of_zero", number(r.phi_of_zero)},
            {"min_nonzero_phi", log_encoded(r.min_nonzero_phi)},
            {"condition_zero", r.condition_zero},
            {"condition_at_least_one", r.condition_at_least_one},
            {"passed", r.passed()}};
}

Json to_json(const LemmaReport& r) {
    Json summary = Json::array();
    for (const auto& s : r.summary)
        summary.push_back({{"lemma", to_string(s.lemma)},
                           {"applicable", s.applicable},
                           {"failed", s.failed},
                           {"min_slack", number(s.min_slack)}});
    Json checks = Json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"lemma", to_string(c.lemma)},
                          {"span", interval(c.span)},
                          {"log_lhs", number(c.log_lhs)},
                          {"log_rhs", number(c.log_rhs)},
                          {"slack", number(c.slack)},
                          {"holds", c.holds}});
    return {{"large_n_precondition", r.large_n_precondition},
            {"all_hold", r.all_hold()},
            {"applicable", r.applicable()},
            {"summary", summary},
            {"checks", checks}};
}

Json to_json(const std::vector<PartSpread>& spreads) {
    Json out = Json::array();
    for (const auto& s : spreads)
        out.push_back({{"part", interval(s.part)},
                       {"log_min", number(s.log_min)},
                       {"log_max", number(s.log_max)},
                       {"exponent", number(s.exponent)},
                       {"chain_holds", s.chain_holds}});
    return out;
}

Json to_json(const RunRecord& r) {
    return {{"seed", r.seed},
            {"T", r.optimisation_time},
            {"initial_ones", r.initial_ones},
            {"truncated", r.truncated}};
}

namespace {

Json to_json(const CellSummary& s) {
    return {{"mean", number(s.mean)},
            {"median", number(s.median)},
            {"q10", number(s.q10)},
            {"q25", number(s.q25)},
            {"q75", number(s.q75)},
            {"q90", number(s.q90)},
            {"min", number(s.min)},
            {"max", number(s.max)},
            {"median_normalized", number(s.median_normalized)},
            {"mean_normalized", number(s.mean_normalized)},
            {"truncated", s.truncated},
            {"inconclusive", s.inconclusive}};
}

}  // namespace

Json to_json(const ExperimentResult& r) {
    Json cells = Json::array();
    for (const auto& cell : r.cells) {
        Json times = Json::array();
        Json seeds = Json::array();
        for (const auto& run : cell.runs) {
            times.push_back(run.optimisation_time);
            seeds.push_back(run.seed);
        }
        cells.push_back({{"index", cell.index},
                         {"family", cell.family},
                         {"n", cell.n},
                         {"c", number(cell.c)},
                         {"cell_seed", cell.cell_seed},
                         {"max_iters", cell.max_iters},
                         {"seeds", seeds},
                         {"times", times},
                         {"summary", to_json(cell.summary)}});
    }
    Json plateaus = Json::array();
    for (const auto& p : r.plateaus)
        plateaus.push_back({{"family", p.family},
                            {"c", number(p.c)},
                            {"min_median_normalized", number(p.min_median_normalized)},
                            {"max_median_normalized", number(p.max_median_normalized)},
                            {"ratio", number(p.ratio)},
                            {"within_tolerance", p.within_tolerance},
                            {"median_increasing", p.median_increasing}});
    return {{"family", r.family},
            {"master_seed", r.master_seed},
            {"reps", r.reps},
            {"plateau_tolerance", number(r.plateau_tolerance)},
            {"cells", cells},
            {"plateaus", plateaus},
            {"truncated", r.truncated},
            {"inconclusive", r.inconclusive}};
}

Json to_json(const TailResult& r) {
    Json rows = Json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"lambda", number(row.lambda)},
                        {"threshold", row.threshold},
                        {"exceedances", row.exceedances},
                        {"empirical", number(row.empirical)},
                        {"bound", number(row.bound)},
                        {"sigma", number(row.sigma)},
                        {"within", row.within}});
    return {{"family", r.family},
            {"n", r.n},
            {"c", number(r.c)},
            {"reps", r.reps},
            {"master_seed", r.master_seed},
            {"nu", number(r.nu)},
            {"nu_source", r.nu_source},
            {"log_phi_max", number(r.log_phi_max)},
            {"max_iters", r.max_iters},
            {"truncated", r.truncated},
            {"rows", rows},
            {"all_within", r.all_within}};
}

Json to_json(const LowerBoundResult& r) {
    return {{"family", r.family},
            {"n", r.n},
            {"c", number(r.c)},
            {"reps", r.reps},
            {"master_seed", r.master_seed},
            {"threshold", number(r.threshold)},
            {"budget", r.budget},
            {"successes", r.successes},
            {"success_rate", number(r.success_rate)},
            {"consistency_bound", number(r.consistency_bound)},
            {"consistent", r.consistent},
            {"informational", r.informational}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_runs_csv(std::ostream& out, const std::string& family, std::size_t n, double c,
                    std::span<const RunRecord> runs, bool header) {
    if (header) out << csv_header << '\n';
    const std::string cs = format_double(c);
    for (const auto& r : runs)
        out << family << ',' << n << ',' << cs << ',' << r.seed << ',' << r.optimisation_time << ','
            << (r.truncated ? 1 : 0) << '\n';
}

void write_runs_csv(std::ostream& out, const ExperimentResult& r) {
    out << csv_header << '\n';
    for (const auto& cell : r.cells) write_runs_csv(out, cell.family, cell.n, cell.c, cell.runs, false);
}

}  // namespace driftlab
