#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "permres/errors.hpp"
#include "permres/harness.hpp"
#include "permres/stabchain.hpp"

using namespace permres;

namespace {

Json strip_timing(Json j) {
  if (j.is_object()) {
    j.erase("timing");
    for (auto& [k, v] : j.items()) v = strip_timing(v);
  } else if (j.is_array()) {
    for (auto& v : j) v = strip_timing(v);
  }
  return j;
}

Json one_check(Json recipe, Json assertion) {
  return {{"checks", {{{"id", "c"}, {"recipe", recipe}, {"assertions", {assertion}}}}}};
}

std::string bundled_manifest() { return std::string(PERMRES_DATA_DIR) + "/paper.json"; }

}  // namespace

TEST_CASE("wrong expected order fails with the measured value") {
  Json m = one_check({{"kind", "symmetric"}, {"n", 5}}, {{"op", "order"}, {"expected", "121"}});
  Json r = run_manifest(m, {});
  CHECK(report_exit_code(r) == 1);
  const Json& a = r["checks"][0]["assertions"][0];
  CHECK(a["status"] == "fail");
  CHECK(a["measured"]["value"] == "120");
  CHECK(r["summary"]["fail"] == 1);
}

TEST_CASE("empty manifest passes") {
  Json r = run_manifest(Json{{"checks", Json::array()}}, {});
  CHECK(report_exit_code(r) == 0);
  CHECK(r["summary"]["checks"] == 0);
  CHECK(r["schema"] == kReportSchema);
}

TEST_CASE("manifest validation") {
  Json good = one_check({{"kind", "symmetric"}, {"n", 3}}, {{"op", "order"}, {"expected", "6"}});
  CHECK(report_exit_code(run_manifest(good, {})) == 0);

  Json dup = good;
  dup["checks"].push_back(good["checks"][0]);
  CHECK_THROWS_AS(run_manifest(dup, {}), InputError);

  Json bad_op = one_check({{"kind", "symmetric"}, {"n", 3}}, {{"op", "frobnicate"}, {"expected", 1}});
  CHECK_THROWS_AS(run_manifest(bad_op, {}), InputError);

  Json bad_tag = good;
  bad_tag["checks"][0]["assertions"][0]["provenance"] = "FOLKLORE";
  CHECK_THROWS_AS(run_manifest(bad_tag, {}), InputError);

  Json uncited = good;
  uncited["checks"][0]["assertions"][0]["provenance"] = "PAPER";
  CHECK_THROWS_AS(run_manifest(uncited, {}), InputError);

  Json no_recipe = {{"checks", {{{"id", "x"}, {"assertions", {{{"op", "order"}, {"expected", "1"}}}}}}}};
  CHECK_THROWS_AS(run_manifest(no_recipe, {}), InputError);
  CHECK_THROWS_AS(run_manifest(Json::array(), {}), InputError);
}

TEST_CASE("JSON syntax errors carry line and column") {
  try {
    parse_json_text("{\n  \"checks\": [\n    oops\n  ]\n}", "m.json");
    FAIL("no exception");
  } catch (const ParseError& e) {
    std::string what = e.what();
    CHECK(what.find("line 3") != std::string::npos);
    CHECK(what.find("column") != std::string::npos);
  }
}

TEST_CASE("resource exhaustion is a skip, not a failure") {
  Json m = one_check({{"kind", "subsets"}, {"m", 30}, {"k", 5}}, {{"op", "order"}, {"expected", "1"}});
  Json r = run_manifest(m, {});
  CHECK(r["checks"][0]["status"] == "skipped-resource");
  CHECK(report_exit_code(r) == 2);
}

TEST_CASE("subsets(5,2) round-trips through the generator file format") {
  LabeledAction a = build_recipe({{"kind", "subsets"}, {"m", 5}, {"k", 2}});
  GeneratorFile f{a.degree(), a.group.generators(), a.group.label()};
  std::string text = format_generator_file(f);
  GeneratorFile back = parse_generator_file(text);
  CHECK(back.degree == 10);
  CHECK(back.generators == a.group.generators());
  CHECK(back.label == a.group.label());
  CHECK(format_generator_file(back) == text);

  std::string path = (std::filesystem::temp_directory_path() / "permres_roundtrip.gens").string();
  std::ofstream(path) << text;
  LabeledAction b = build_recipe(load_recipe_arg(path));
  CHECK(b.group.order() == 120);
  CHECK(b.degree() == 10);
}

TEST_CASE("describe recomputes structure") {
  Json d = describe_json(build_recipe({{"kind", "affine"}, {"linear", {{"family", "Sp"}, {"m", 4}, {"q", 2}}}}));
  CHECK(d["order"] == "11520");
  CHECK(d["primitive"] == true);
  CHECK(d["two_transitive"] == true);
  CHECK(d["composition_factors"] == "A6, C2^5");
  CHECK(d["gamma_profile"]["min_verified_d"] == 7);

  Json diag = describe_json(build_recipe(
      {{"kind", "diagonal"}, {"t", {{"kind", "alternating"}, {"n", 5}}}, {"swap", true}, {"outer", "(1 2)"}}));
  CHECK(diag["order"] == "14400");
  CHECK(diag["degree"] == 60);
  CHECK(diag["primitive"] == true);
}

TEST_CASE("recipe errors") {
  CHECK_THROWS_AS(build_recipe({{"kind", "nope"}}), InputError);
  CHECK_THROWS_AS(build_recipe({{"kind", "symmetric"}}), InputError);
  CHECK_THROWS_AS(build_recipe({{"kind", "generators"}, {"degree", 3}, {"generators", {"(1 4)"}}}), InputError);
  CHECK_THROWS_AS(build_recipe({{"kind", "classical-subspace-action"}, {"family", "Sp"}, {"m", 5}, {"q", 2}}),
                  InputError);
  CHECK_THROWS_AS(build_recipe({{"kind", "subsets"}, {"m", 30}, {"k", 5}}), ResourceError);
  // coset action of S4 on the cosets of a point stabilizer is the natural action
  LabeledAction c = build_recipe({{"kind", "coset-action"},
                                  {"group", {{"kind", "symmetric"}, {"n", 4}}},
                                  {"subgroup", {{"kind", "point-stabilizer"}, {"point", 1}}}});
  CHECK(c.degree() == 4);
  CHECK(c.group.order() == 24);
}

TEST_CASE("expectations match recursively") {
  Json measured = {{"value", 6}, {"minimal", true}, {"points", {1, 2}}};
  CHECK(expectation_matches(6, measured));
  CHECK(expectation_matches(Json{{"value", 6}, {"minimal", true}}, measured));
  CHECK_FALSE(expectation_matches(Json{{"value", 6}, {"minimal", false}}, measured));
  CHECK_FALSE(expectation_matches(Json{{"missing", 1}}, measured));
  CHECK(expectation_matches("120", Json{{"value", "120"}}));
  CHECK(expectation_matches(120, Json{{"value", "120"}}));
  CHECK(expectation_matches(Json::array({1, 35}), Json{{"value", {1, 35}}}));
  CHECK_FALSE(expectation_matches(Json::array({1, 35}), Json{{"value", {1, 15, 20}}}));
}

TEST_CASE("bundled manifest passes and reports are deterministic") {
  RunOptions one, many;
  many.threads = 4;
  Json a = run_manifest_file(bundled_manifest(), one);
  Json b = run_manifest_file(bundled_manifest(), one);
  Json c = run_manifest_file(bundled_manifest(), many);
  CHECK(report_exit_code(a) == 0);
  CHECK(strip_timing(a).dump() == strip_timing(b).dump());
  CHECK(strip_timing(a).dump() == strip_timing(c).dump());
  CHECK(a["tool_version"] == kToolVersion);
  CHECK(a["input_hashes"]["manifest"].get<std::string>().size() == 16);
}

TEST_CASE("bundled manifest cites every externally sourced assertion") {
  std::ifstream in(bundled_manifest());
  Json m = Json::parse(in);
  std::size_t cited = 0;
  for (const auto& c : m["checks"])
    for (const auto& a : c["assertions"])
      if (a.value("provenance", "") == "PAPER") {
        CHECK_FALSE(a.value("citation", "").empty());
        ++cited;
      }
  CHECK(cited >= 6);
}

TEST_CASE("fnv1a") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}
