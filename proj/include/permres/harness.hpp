#pragma once

// Recipes (JSON group constructions), verification manifests and run reports.

#include <string>

#include "json.hpp"
#include "permres/budget.hpp"
#include "permres/constructions.hpp"

namespace permres {

using Json = nlohmann::json;

inline constexpr const char* kToolVersion = "permres 1.0.0";
inline constexpr const char* kReportSchema = "permres-report/1";
inline constexpr const char* kManifestSchema = "permres-manifest/1";

// Parses JSON text; syntax errors become ParseError with line and column.
Json parse_json_text(const std::string& text, const std::string& source);
// A recipe given as inline JSON, a JSON file, or a generator file.
Json load_recipe_arg(const std::string& arg);
std::string read_text_file(const std::string& path);

LabeledAction build_recipe(const Json& recipe, Budget& budget = unlimited_budget());

Json construct_json(const LabeledAction& a);
Json describe_json(const LabeledAction& a, Budget& budget = unlimited_budget());

// Runs one manifest operation. group may be null for operations that need no
// group (thresholds, formulas). The result always carries a "value" field.
Json evaluate_operation(const std::string& op, const Json& params, const LabeledAction* group,
                        Budget& budget);
bool expectation_matches(const Json& expected, const Json& measured);

struct RunOptions {
  unsigned threads = 1;
  std::optional<long long> default_budget_ms;  // PERMRES_BUDGET_MS when unset
};

// Validates and runs a manifest. Input problems throw InputError / ParseError.
Json run_manifest(const Json& manifest, const RunOptions& opt, const std::string& source_hash = {});
Json run_manifest_file(const std::string& path, const RunOptions& opt);
// 0 all pass, 1 some assertion failed, 2 resource skip without failures.
int report_exit_code(const Json& report);

std::string fnv1a_hex(const std::string& bytes);

}  // namespace permres
