#pragma once

// JSON reports (schema tclab-report/1) and their table rendering.

#include "tclab/config.hpp"
#include "tclab/sha_pipeline.hpp"

#include <json.hpp>

namespace tclab {

using json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "tclab-report/1";

/// With p != 0 the entry also carries norm_is_1_mod_p (whether the local condition at P is nontrivial).
json prime_json(const NumberField& K, const PrimeIdeal& P, std::uint64_t p = 0);
json primes_json(const NumberField& K, const std::vector<PrimeIdeal>& v, std::uint64_t p = 0);
json field_json(const NumberField& K);
json units_json(const NumberField& K, const UnitBasis& U);
json class_group_json(const NumberField& K, const ClassGroupData& cl);
json ray_class_json(const NumberField& K, const RayClassPPart& G);
json selmer_json(const NumberField& K, const SelmerBasis& B);
json h1_json(const H1FormulaContext& h);
json exceptional_json(const ExceptionalityReport& r);
json sandwich_json(const ShaSandwich& s);
json preserving_json(const NumberField& K, const PreservingSet& X);
json module_json(const GammaModule& m);

/// A table as JSON: {"title", "columns", "rows": [{"name", "cells"}]}.
json make_table(const std::string& title, const std::vector<std::string>& columns);
void add_row(json& table, const std::string& name, const std::vector<std::string>& cells);

/// Skeleton report with the schema stamp and the command echo.
json make_report(const std::string& command, const std::vector<std::string>& argv);

/// Column-aligned rendering of report["tables"]; nothing else is consulted.
std::string emit_table(const json& report);

/// Runs the configured layer pipeline: ray class groups, RusB, sandwiches
/// (untwisted and twisted by A), descent and module facts. Fills
/// report["inputs"], ["results"], ["provenance"], ["tables"].
void run_pipeline(const RunConfig& cfg, json& report);

/// Compares report["results"]["rows"] against cfg.expected ("*" matches anything).
/// Returns one line per mismatch; empty when the golden diff is clean.
std::vector<std::string> golden_diff(const RunConfig& cfg, const json& report);

/// Built-in configurations for `reproduce`.
std::string builtin_config(const std::string& name);

}  // namespace tclab
