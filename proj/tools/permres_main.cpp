#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "permres/errors.hpp"
#include "permres/harness.hpp"

using namespace permres;

namespace {

struct Globals {
  bool json = false;
  long long budget_ms = 0;
  unsigned threads = 1;
};

std::string scalar(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

// Two-column table of the top-level fields; nested objects and arrays are
// printed compactly.
void print_table(const Json& j) {
  std::size_t w = 0;
  for (const auto& [k, v] : j.items()) w = std::max(w, k.size());
  for (const auto& [k, v] : j.items()) std::cout << k << std::string(w - k.size() + 2, ' ') << scalar(v) << "\n";
}

void emit(const Globals& g, const Json& j) {
  if (g.json) std::cout << j.dump(2) << "\n";
  else print_table(j);
}

std::unique_ptr<Budget> make_budget(const Globals& g) {
  if (g.budget_ms > 0) return std::make_unique<Budget>(std::chrono::milliseconds(g.budget_ms));
  if (auto env = Budget::from_env()) return std::make_unique<Budget>(*env);
  return std::make_unique<Budget>();
}

Json parse_params(const std::vector<std::string>& kv) {
  Json p = Json::object();
  for (const auto& s : kv) {
    auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw InputError("parameter '" + s + "' is not key=value");
    std::string key = s.substr(0, eq), val = s.substr(eq + 1);
    // numbers stay numbers, everything else (fractions, names) is a string
    bool digits = !val.empty() && val.find_first_not_of("0123456789") == std::string::npos && val.size() < 18;
    if (digits) p[key] = std::stoll(val);
    else if (!val.empty() && val[0] == '{') p[key] = parse_json_text(val, key);
    else p[key] = val;
  }
  return p;
}

void print_verify_text(const Json& report) {
  std::size_t w = 2;
  for (const auto& c : report.at("checks")) w = std::max(w, c.at("id").get<std::string>().size());
  for (const auto& c : report.at("checks")) {
    std::string id = c.at("id");
    std::cout << id << std::string(w - id.size() + 2, ' ') << c.at("status").get<std::string>() << "  "
              << c.at("timing").at("wall_ms") << " ms\n";
    for (const auto& a : c.at("assertions")) {
      if (a.at("status") == "pass") continue;
      std::cout << "  " << a.at("op").get<std::string>() << ": expected " << a.at("expected").dump();
      if (a.contains("measured")) std::cout << ", measured " << a.at("measured").dump();
      if (a.contains("reason")) std::cout << " (" << a.at("reason").get<std::string>() << ")";
      std::cout << "\n";
    }
  }
  const Json& s = report.at("summary");
  std::cout << s.at("checks") << " checks: " << s.at("pass") << " pass, " << s.at("fail") << " fail, "
            << s.at("skipped_resource") << " skipped-resource\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"permres: permutation group resolution toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kToolVersion);
  Globals g;
  app.add_flag("--json", g.json, "emit JSON instead of a text table");
  app.add_option("--budget-ms", g.budget_ms, "wall-clock budget per command or check (default PERMRES_BUDGET_MS)");
  app.add_option("--threads", g.threads, "worker threads")->check(CLI::Range(1u, 256u));

  std::string recipe_arg;
  auto add_recipe = [&](CLI::App* sub) {
    sub->add_option("recipe", recipe_arg, "inline JSON recipe, recipe file or generator file")->required();
  };

  auto* construct = app.add_subcommand("construct", "build a group and print generators");
  add_recipe(construct);
  std::string out_path;
  construct->add_option("-o,--output", out_path, "write a generator file");

  auto* describe = app.add_subcommand("describe", "structure summary");
  add_recipe(describe);
  auto* order = app.add_subcommand("order", "group order");
  add_recipe(order);

  auto* base = app.add_subcommand("base-size", "exact minimal base size");
  add_recipe(base);
  std::size_t max_b = 0;
  base->add_option("--max-b", max_b, "give up above this size");
  bool greedy = false;
  base->add_flag("--greedy", greedy, "greedy base only");

  auto* dist = app.add_subcommand("dist-number", "distinguishing number with witness coloring");
  add_recipe(dist);
  std::size_t max_degree = 64;
  dist->add_option("--max-degree", max_degree);

  auto* scan = app.add_subcommand("stab-scan", "classify c-point stabilizers");
  add_recipe(scan);
  std::size_t c = 2;
  std::string predicate = "solvable";
  scan->add_option("-c", c, "tuple length")->required();
  scan->add_option("--predicate", predicate, "solvable or gamma:d");

  auto* reg = app.add_subcommand("reg-count", "count regular t-tuples");
  add_recipe(reg);
  std::size_t t = 0;
  std::string threshold = "auto";
  reg->add_option("-t", t, "tuple length")->required();
  reg->add_option("--threshold", threshold, "auto (|G|), none, or an integer");

  auto* bounds = app.add_subcommand("bounds", "bound checks and threshold functions");
  std::string bound_op;
  std::vector<std::string> kv;
  bounds->add_option("check", bound_op,
                     "lemma22, thm13, thm13_sd_probe, formula, m_epsilon, n_c_delta or prod_check")
      ->required();
  bounds->add_option("recipe", recipe_arg, "group recipe when the check needs one");
  bounds->add_option("-p,--param", kv, "key=value");

  auto* verify = app.add_subcommand("verify", "run a verification manifest");
  std::string manifest;
  verify->add_option("manifest", manifest)->required();
  verify->add_option("-o,--output", out_path, "also write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  try {
    if (verify->parsed()) {
      RunOptions opt;
      opt.threads = g.threads;
      if (g.budget_ms > 0) opt.default_budget_ms = g.budget_ms;
      Json report = run_manifest_file(manifest, opt);
      if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw InputError("cannot write '" + out_path + "'");
        out << report.dump(2) << "\n";
      }
      if (g.json) std::cout << report.dump(2) << "\n";
      else print_verify_text(report);
      return report_exit_code(report);
    }

    auto budget = make_budget(g);
    if (bounds->parsed()) {
      std::optional<LabeledAction> grp;
      if (!recipe_arg.empty()) grp = build_recipe(load_recipe_arg(recipe_arg), *budget);
      Json r = evaluate_operation(bound_op, parse_params(kv), grp ? &*grp : nullptr, *budget);
      emit(g, r);
      return 0;
    }

    LabeledAction a = build_recipe(load_recipe_arg(recipe_arg), *budget);
    if (construct->parsed()) {
      GeneratorFile f{a.degree(), a.group.generators(), a.group.label()};
      if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw InputError("cannot write '" + out_path + "'");
        out << format_generator_file(f);
      }
      if (g.json) std::cout << construct_json(a).dump(2) << "\n";
      else std::cout << format_generator_file(f);
      return 0;
    }
    if (describe->parsed()) {
      Json d = describe_json(a, *budget);
      if (g.json) {
        std::cout << d.dump(2) << "\n";
      } else {
        d.erase("factors");
        print_table(d);
      }
      return 0;
    }
    Json r;
    if (order->parsed()) {
      r = evaluate_operation("order", {}, &a, *budget);
    } else if (base->parsed()) {
      Json p = Json::object();
      p["threads"] = g.threads;
      if (max_b) p["max_b"] = max_b;
      r = evaluate_operation(greedy ? "greedy_base" : "base_size", p, &a, *budget);
    } else if (dist->parsed()) {
      r = evaluate_operation("dist_number", {{"max_degree", max_degree}}, &a, *budget);
    } else if (scan->parsed()) {
      r = evaluate_operation("stab_scan", {{"c", c}, {"predicate", predicate}}, &a, *budget);
    } else if (reg->parsed()) {
      r = evaluate_operation("reg_count", {{"t", t}, {"threshold", threshold}}, &a, *budget);
    }
    emit(g, r);
    if (r.contains("complete") && r.at("complete") == false) return 2;
    return 0;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
