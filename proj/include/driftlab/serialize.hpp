#pragma once

/// @file serialize.hpp
/// @brief JSON and CSV encodings shared by the CLI and the experiments.
///
/// JSON objects use sorted keys and doubles print as shortest round-trip
/// decimals, so equal inputs give byte-identical text. Extended-precision
/// quantities that may leave double range (weights, potentials) are written
/// as {"log_value": ln|v|, "sign": -1|0|1}. Non-finite doubles become null.

#include <ostream>
#include <span>
#include <string>

#include <json.hpp>

#include "driftlab/construction.hpp"
#include "driftlab/ea.hpp"
#include "driftlab/experiments.hpp"
#include "driftlab/feasibility.hpp"
#include "driftlab/lemmas.hpp"

namespace driftlab {

inline constexpr int schema_version = 1;

using Json = nlohmann::json;

[[nodiscard]] Json log_encoded(Real v);
[[nodiscard]] Json to_json(const DriftParams& p);
[[nodiscard]] Json to_json(const LinearObjective& f);
[[nodiscard]] Json to_json(const Construction& c);
[[nodiscard]] Json to_json(const FeasibilityReport& r);
[[nodiscard]] Json to_json(const DefinitionReport& r);
[[nodiscard]] Json to_json(const LemmaReport& r);
[[nodiscard]] Json to_json(const std::vector<PartSpread>& spreads);
[[nodiscard]] Json to_json(const RunRecord& r);
[[nodiscard]] Json to_json(const ExperimentResult& r);
[[nodiscard]] Json to_json(const TailResult& r);
[[nodiscard]] Json to_json(const LowerBoundResult& r);

/// Two-space indented dump with a trailing newline.
[[nodiscard]] std::string dump(const Json& j);

/// Shortest round-trip decimal for a double.
[[nodiscard]] std::string format_double(double v);

inline constexpr const char* csv_header = "family,n,c,seed,T,truncated";

/// One row per run, header first.
void write_runs_csv(std::ostream& out, const std::string& family, std::size_t n, double c,
                    std::span<const RunRecord> runs, bool header = true);
void write_runs_csv(std::ostream& out, const ExperimentResult& r);

}  // namespace driftlab
