#include "permres/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "permres/bounds.hpp"
#include "permres/classical.hpp"
#include "permres/errors.hpp"
#include "permres/search.hpp"
#include "permres/stabchain.hpp"
#include "permres/structure.hpp"

namespace permres {

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(source + ": invalid JSON at line " + std::to_string(line) + ", column " +
                         std::to_string(col),
                     byte);
  }
}

Json load_recipe_arg(const std::string& arg) {
  auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && arg[first] == '{') return parse_json_text(arg, "recipe");
  std::string text = read_text_file(arg);
  first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') return parse_json_text(text, arg);
  GeneratorFile f = parse_generator_file(text);
  Json gens = Json::array();
  for (const auto& g : f.generators) gens.push_back(format_cycles(g));
  Json r = {{"kind", "generators"}, {"degree", f.degree}, {"generators", gens}};
  if (!f.label.empty()) r["label"] = f.label;
  return r;
}

namespace {

const Json& req(const Json& j, const char* key, const char* what = "recipe") {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string(what) + ": missing '" + key + "'");
  return j.at(key);
}

std::string req_string(const Json& j, const char* key, const char* what = "recipe") {
  const Json& v = req(j, key, what);
  if (!v.is_string()) throw InputError(std::string(what) + ": '" + key + "' must be a string");
  return v.get<std::string>();
}

unsigned long as_ulong(const Json& v, const std::string& key) {
  if (v.is_number_unsigned()) return v.get<unsigned long>();
  if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<unsigned long>(v.get<long long>());
  if (v.is_string()) {
    BigInt b = parse_bigint(v.get<std::string>());
    if (b >= 0 && b.fits_ulong_p()) return b.get_ui();
  }
  throw InputError("'" + key + "' must be a non-negative integer");
}

unsigned long req_ulong(const Json& j, const char* key, const char* what = "recipe") {
  return as_ulong(req(j, key, what), key);
}

unsigned long opt_ulong(const Json& j, const char* key, unsigned long dflt) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return dflt;
  return as_ulong(j.at(key), key);
}

bool opt_bool(const Json& j, const char* key, bool dflt) {
  if (!j.is_object() || !j.contains(key)) return dflt;
  if (!j.at(key).is_boolean()) throw InputError(std::string("'") + key + "' must be true or false");
  return j.at(key).get<bool>();
}

BigInt as_bigint(const Json& v, const std::string& key) {
  if (v.is_number_integer()) return BigInt(v.dump());
  if (v.is_string()) return parse_bigint(v.get<std::string>());
  throw InputError("'" + key + "' must be an integer");
}

Rational as_rational(const Json& v, const std::string& key) {
  if (v.is_number_integer()) return Rational(BigInt(v.dump()));
  if (v.is_string()) return parse_rational(v.get<std::string>());
  throw InputError("'" + key + "' must be a rational given as a string such as \"1/2\"");
}

std::vector<std::string> natural_labels(std::size_t n) {
  std::vector<std::string> l;
  for (std::size_t i = 1; i <= n; ++i) l.push_back(std::to_string(i));
  return l;
}

LabeledAction natural(GeneratedGroup g) {
  LabeledAction a;
  std::size_t n = g.degree;
  a.group = PermGroup(std::move(g));
  a.labels = natural_labels(n);
  return a;
}

FqMatrix parse_matrix(const Json& j, const FieldPtr& f, std::size_t m) {
  if (!j.is_array() || j.size() != m) throw InputError("matrix must have " + std::to_string(m) + " rows");
  std::vector<FqVector> rows;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != m) throw InputError("matrix rows must have " + std::to_string(m) + " entries");
    FqVector v;
    for (const auto& x : row) {
      unsigned long e = as_ulong(x, "matrix entry");
      if (e >= f->q()) throw InputError("matrix entry " + std::to_string(e) + " is not a field element");
      v.push_back(static_cast<FqField::Elem>(e));
    }
    rows.push_back(v);
  }
  return FqMatrix::from_rows(f, rows, m);
}

ClassicalGroup classical_from(const Json& r) {
  return classical_group(parse_family(req_string(r, "family")), static_cast<unsigned>(req_ulong(r, "m")),
                         static_cast<unsigned>(req_ulong(r, "q")));
}

MatrixActionSpec action_spec(const Json& r, const FormSpec& form) {
  MatrixActionSpec s;
  s.kind = parse_object_kind(r.value("objects", std::string("vectors")));
  s.subspace_dim = opt_ulong(r, "dim", 1);
  s.filter = parse_subspace_filter(r.value("filter", std::string("all")));
  std::string sign = r.value("sign", std::string("any"));
  if (sign == "+" || sign == "plus") s.sign = 1;
  else if (sign == "-" || sign == "minus") s.sign = -1;
  else if (sign != "any") throw InputError("sign must be '+', '-' or 'any'");
  s.cap = opt_ulong(r, "cap", kDefaultDegreeCap);
  if (r.contains("seed")) {
    std::vector<FqVector> rows;
    for (const auto& row : r.at("seed")) {
      FqVector v;
      for (const auto& x : row) {
        unsigned long e = as_ulong(x, "seed entry");
        if (e >= form.field->q()) throw InputError("seed entry is not a field element");
        v.push_back(static_cast<FqField::Elem>(e));
      }
      if (v.size() != form.dim) throw InputError("seed vectors must have length " + std::to_string(form.dim));
      rows.push_back(v);
    }
    s.seed = rows;
  }
  return s;
}

std::vector<FqMatrix> extra_matrices(const Json& r, const FormSpec& form) {
  std::vector<FqMatrix> out;
  if (!r.contains("extra")) return out;
  for (const auto& m : r.at("extra")) {
    FqMatrix g = parse_matrix(m, form.field, form.dim);
    if (!g.inverse()) throw InputError("extra matrix is singular");
    out.push_back(g);
  }
  return out;
}

std::string classical_label(const ClassicalGroup& cg, const MatrixActionSpec& s) {
  std::string on;
  switch (s.kind) {
    case ObjectKind::kVectors: on = "vectors"; break;
    case ObjectKind::kPoints: on = "1-spaces"; break;
    case ObjectKind::kSubspaces: on = std::to_string(s.subspace_dim) + "-subspaces"; break;
  }
  return cg.name + " on " + on;
}

LabeledAction build_classical(const Json& r, Budget& budget) {
  ClassicalGroup cg = classical_from(r);
  MatrixActionSpec spec = action_spec(r, cg.form);
  auto gens = cg.gens;
  auto extra = extra_matrices(r, cg.form);
  gens.insert(gens.end(), extra.begin(), extra.end());
  LabeledAction a = matrix_orbit_action(gens, cg.form, spec, budget);
  if (extra.empty()) a.abstract_order = cg.order;
  a.group.set_label(r.value("label", classical_label(cg, spec)));
  return a;
}

PermGroup restrict_gens(const PermGroup& combined, std::size_t from, std::size_t to) {
  std::vector<Permutation> g(combined.generators().begin() + static_cast<long>(from),
                             combined.generators().begin() + static_cast<long>(to));
  return PermGroup(GeneratedGroup(combined.degree(), g));
}

LabeledAction build_coset(const Json& r, Budget& budget) {
  const Json& gr = req(r, "group");
  const Json& hr = req(r, "subgroup");
  std::size_t cap = opt_ulong(r, "cap", kDefaultDegreeCap);
  PermGroup g, h;
  if (hr.is_object() && hr.contains("family")) {
    // matrix subgroup: act with both generator sets on the group's objects
    if (req_string(gr, "kind") != "classical-subspace-action")
      throw InputError("a classical subgroup needs a classical-subspace-action group");
    ClassicalGroup cg = classical_from(gr), ch = classical_from(hr);
    if (ch.form.dim != cg.form.dim || ch.form.field != cg.form.field)
      throw InputError("subgroup and group act on different spaces");
    MatrixActionSpec spec = action_spec(gr, cg.form);
    auto gens = cg.gens;
    auto extra = extra_matrices(gr, cg.form);
    gens.insert(gens.end(), extra.begin(), extra.end());
    std::size_t ng = gens.size();
    gens.insert(gens.end(), ch.gens.begin(), ch.gens.end());
    LabeledAction both = matrix_orbit_action(gens, cg.form, spec, budget);
    g = restrict_gens(both.group, 0, ng);
    h = restrict_gens(both.group, ng, gens.size());
    if (g.order() != both.group.order()) throw InputError("subgroup generators leave the group");
  } else {
    LabeledAction ga = build_recipe(gr, budget);
    g = ga.group;
    std::string kind = req_string(hr, "kind", "subgroup");
    if (kind == "generators") {
      std::vector<Permutation> gens;
      for (const auto& s : req(hr, "generators", "subgroup")) gens.push_back(parse_permutation(s.get<std::string>(), g.degree()));
      h = PermGroup(GeneratedGroup(g.degree(), gens));
    } else if (kind == "point-stabilizer") {
      unsigned long p = req_ulong(hr, "point", "subgroup");
      if (p < 1 || p > g.degree()) throw InputError("subgroup: point out of range");
      h = point_stabilizer(g, static_cast<Point>(p - 1));
    } else if (kind == "setwise-stabilizer") {
      std::vector<Point> pts;
      for (const auto& x : req(hr, "points", "subgroup")) {
        unsigned long p = as_ulong(x, "points");
        if (p < 1 || p > g.degree()) throw InputError("subgroup: point out of range");
        pts.push_back(static_cast<Point>(p - 1));
      }
      h = setwise_stabilizer(g, pts, budget);
    } else {
      throw InputError("unknown subgroup kind '" + kind + "'");
    }
  }
  LabeledAction a = coset_action(g, h, cap, budget);
  a.group.set_label(r.value("label", std::string("coset action")));
  return a;
}

}  // namespace

LabeledAction build_recipe(const Json& r, Budget& budget) {
  if (!r.is_object()) throw InputError("recipe must be a JSON object");
  std::string kind = req_string(r, "kind");
  std::size_t cap = opt_ulong(r, "cap", kDefaultDegreeCap);
  LabeledAction a;
  if (kind == "generators") {
    std::size_t n = req_ulong(r, "degree");
    std::vector<Permutation> gens;
    for (const auto& s : req(r, "generators")) {
      if (!s.is_string()) throw InputError("generators must be strings in cycle notation");
      gens.push_back(parse_permutation(s.get<std::string>(), n));
    }
    a = natural(GeneratedGroup(n, gens));
    a.group.set_label(r.value("label", std::string("group of degree ") + std::to_string(n)));
  } else if (kind == "generator-file") {
    GeneratorFile f = read_generator_file(req_string(r, "path"));
    a = natural(GeneratedGroup(f.degree, f.generators, f.label));
  } else if (kind == "symmetric" || kind == "alternating") {
    std::size_t n = req_ulong(r, "n");
    bool alt = kind == "alternating";
    a = natural(GeneratedGroup(n, symmetric_generators(n, alt)));
    a.abstract_order = n < 2 ? BigInt(1) : alt ? BigInt(factorial(n) / 2) : factorial(n);
    a.group.set_label((alt ? "A" : "S") + std::to_string(n));
  } else if (kind == "cyclic") {
    std::size_t n = req_ulong(r, "n");
    if (n < 1) throw InputError("cyclic needs n >= 1");
    std::vector<Point> cyc(n);
    for (std::size_t i = 0; i < n; ++i) cyc[i] = static_cast<Point>(i);
    std::vector<Permutation> gens;
    if (n > 1) gens.push_back(Permutation::from_cycles(n, {cyc}));
    a = natural(GeneratedGroup(n, gens));
    a.group.set_label("C" + std::to_string(n));
  } else if (kind == "dihedral") {
    std::size_t n = req_ulong(r, "n");
    if (n < 3) throw InputError("dihedral needs n >= 3");
    std::vector<Point> cyc(n), refl(n);
    for (std::size_t i = 0; i < n; ++i) {
      cyc[i] = static_cast<Point>((i + 1) % n);
      refl[i] = static_cast<Point>((n - i) % n);
    }
    a = natural(GeneratedGroup(n, {Permutation(cyc), Permutation(refl)}));
    a.group.set_label("D" + std::to_string(2 * n));
  } else if (kind == "classical-subspace-action") {
    a = build_classical(r, budget);
  } else if (kind == "coset-action") {
    a = build_coset(r, budget);
  } else if (kind == "subsets" || kind == "partitions") {
    std::size_t m = req_ulong(r, "m"), k = req_ulong(r, "k");
    bool alt = opt_bool(r, "alt", false);
    a = kind == "subsets" ? subsets_action(m, k, alt, cap) : partitions_action(m, k, alt, cap);
  } else if (kind == "affine") {
    const Json& lin = req(r, "linear");
    if (lin.contains("family")) {
      ClassicalGroup cg = classical_from(lin);
      if (cg.family == Family::kSU) throw InputError("affine recipes need a linear group over GF(q)");
      a = affine_action(cg.gens, cg.form.field, cg.m, cg.order, cap);
      a.group.set_label(r.value("label", std::to_string(cg.q) + "^" + std::to_string(cg.m) + ":" + cg.name));
    } else {
      std::size_t m = req_ulong(lin, "m", "linear");
      FieldPtr f = FqField::get(static_cast<unsigned>(req_ulong(lin, "q", "linear")));
      std::vector<FqMatrix> mats;
      for (const auto& j : req(lin, "matrices", "linear")) mats.push_back(parse_matrix(j, f, m));
      a = affine_action(mats, f, m, 0, cap);
      a.group.set_label(r.value("label", std::string("affine group")));
    }
  } else if (kind == "wreath") {
    LabeledAction l = build_recipe(req(r, "base"), budget), p = build_recipe(req(r, "top"), budget);
    std::string act = r.value("action", std::string("imprimitive"));
    if (act == "imprimitive") a = wreath_imprimitive(l.group, p.group, cap);
    else if (act == "product") a = wreath_product_action(l.group, p.group, cap);
    else throw InputError("wreath action must be 'imprimitive' or 'product'");
    a.group.set_label(r.value("label", l.group.label() + " wr " + p.group.label() + " (" + act + ")"));
  } else if (kind == "diagonal") {
    LabeledAction t = build_recipe(req(r, "t"), budget);
    std::optional<Permutation> outer;
    if (r.contains("outer")) outer = parse_permutation(req_string(r, "outer"), t.degree());
    a = diagonal_type_group(t.group, opt_bool(r, "swap", false), outer, cap);
    a.group.set_label(r.value("label", "diagonal type on " + t.group.label()));
  } else {
    throw InputError("unknown recipe kind '" + kind + "'");
  }
  if (r.contains("label") && kind != "generator-file") a.group.set_label(r.at("label").get<std::string>());
  if (a.degree() > cap) throw ResourceError("degree exceeds the cap");
  return a;
}

Json construct_json(const LabeledAction& a) {
  Json gens = Json::array();
  for (const auto& g : a.group.generators()) gens.push_back(format_cycles(g));
  return {{"label", a.group.label()}, {"degree", a.degree()}, {"generators", gens}, {"labels", a.labels}};
}

namespace {

Json factors_json(const std::vector<FactorDescriptor>& fs) {
  Json out = Json::array();
  for (const auto& f : fs)
    out.push_back({{"name", f.name},
                   {"kind", to_string(f.kind)},
                   {"order", f.order.get_str()},
                   {"alt_section", {f.alt_lower, f.alt_upper}},
                   {"simple_known", f.simple_known}});
  return out;
}

std::vector<std::size_t> suborbit_lengths(const PermGroup& g) {
  std::vector<std::size_t> out;
  for (const auto& o : orbits(point_stabilizer(g, 0))) out.push_back(o.size());
  std::sort(out.begin(), out.end());
  return out;
}

Json big_or_null(const BigInt& b) { return b == 0 ? Json(nullptr) : Json(b.get_str()); }

}  // namespace

Json describe_json(const LabeledAction& a, Budget& budget) {
  const PermGroup& g = a.group;
  Json d;
  d["label"] = g.label();
  d["degree"] = g.degree();
  d["order"] = g.order().get_str();
  d["abstract_order"] = big_or_null(a.abstract_order);
  d["kernel_order"] = big_or_null(a.kernel_order());
  auto orbs = orbits(g);
  Json lengths = Json::array();
  for (const auto& o : orbs) lengths.push_back(o.size());
  d["orbit_lengths"] = lengths;
  bool transitive = orbs.size() == 1;
  d["transitive"] = transitive;
  if (transitive && g.degree() > 1) {
    auto sub = suborbit_lengths(g);
    d["primitive"] = is_primitive(g);
    d["rank"] = sub.size();
    d["suborbits"] = sub;
    d["two_transitive"] = sub.size() <= 2;
  } else {
    d["primitive"] = transitive;
  }
  auto factors = composition_factors(g, {}, budget);
  d["composition_factors"] = factors_summary(factors);
  d["factors"] = factors_json(factors);
  bool solvable = std::all_of(factors.begin(), factors.end(),
                              [](const FactorDescriptor& f) { return f.kind == FactorKind::kCyclic; });
  d["solvable"] = solvable;
  GammaProfile gp = gamma_profile(factors);
  d["gamma_profile"] = {{"min_verified_d", gp.min_verified_d}, {"min_possible_d", gp.min_possible_d}};
  return d;
}

namespace {

const std::set<std::string>& known_operations() {
  static const std::set<std::string> ops = {
      "order",        "degree",         "abstract_order", "kernel_order",    "is_transitive", "is_primitive",
      "two_transitive", "suborbits",    "orbit_lengths",  "composition_factors", "solvable",  "gamma",
      "gamma_profile", "base_size",     "greedy_base",    "base_lower_bound", "stab_scan",    "reg_count",
      "dist_number",  "lemma22",        "thm13",          "thm13_sd_probe",  "formula",       "prod_check",
      "m_epsilon",    "n_c_delta",      "describe"};
  return ops;
}

bool needs_group(const std::string& op) {
  return op != "m_epsilon" && op != "n_c_delta" && op != "thm13_sd_probe" &&
         !(op == "formula");
}

Json points_json(const std::vector<Point>& pts) {
  Json j = Json::array();
  for (Point p : pts) j.push_back(p + 1);
  return j;
}

Json report_json(const BoundReport& r) {
  Json params = Json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  Json j = {{"value", to_string(r.verdict)}, {"name", r.name},     {"params", params},
            {"bound", r.bound_value},        {"measured", r.measured}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json base_json(const BaseWitness& w) {
  Json j;
  j["value"] = w.complete && !w.exceeds_max ? Json(w.size) : Json(nullptr);
  j["points"] = points_json(w.points);
  j["minimal"] = w.minimal;
  j["complete"] = w.complete;
  j["exceeds_max"] = w.exceeds_max;
  j["lower_bound"] = w.lower_bound;
  return j;
}

}  // namespace

Json evaluate_operation(const std::string& op, const Json& params, const LabeledAction* group, Budget& budget) {
  if (!known_operations().count(op)) throw InputError("unknown operation '" + op + "'");
  if (needs_group(op) && !group) throw InputError("operation '" + op + "' needs a recipe");
  const Json p = params.is_null() ? Json::object() : params;
  if (op == "m_epsilon") return {{"value", m_epsilon(as_rational(req(p, "eps", "m_epsilon"), "eps"))}};
  if (op == "n_c_delta")
    return {{"value", n_c_delta(static_cast<unsigned>(req_ulong(p, "c", "n_c_delta")),
                                as_rational(req(p, "delta", "n_c_delta"), "delta"))}};
  if (op == "thm13_sd_probe")
    return report_json(theorem13_sd_probe(static_cast<unsigned>(req_ulong(p, "d", "thm13_sd_probe")),
                                          as_rational(req(p, "delta", "thm13_sd_probe"), "delta")));
  if (op == "formula") {
    std::map<std::string, std::string> fp;
    std::optional<BigInt> measured;
    for (const auto& [k, v] : p.items()) {
      if (k == "name" || k == "measure") continue;
      fp[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
    if (p.contains("measure")) {
      if (!group) throw InputError("formula: 'measure' needs a recipe");
      std::string what = p.at("measure").get<std::string>();
      if (what == "base_size") {
        BaseWitness w = base_size_exact(group->group, group->degree(), budget);
        if (!w.complete) throw ResourceError("base size search ran out of budget");
        measured = BigInt(static_cast<unsigned long>(w.size));
      } else if (what == "order") {
        measured = group->group.order();
      } else {
        throw InputError("formula: unknown measure '" + what + "'");
      }
    }
    BoundReport r = formula_report(req_string(p, "name", "formula"), fp, measured);
    Json j = report_json(r);
    j["verdict"] = j["value"];
    j["value"] = parse_bigint(r.bound_value).fits_ulong_p() ? Json(parse_bigint(r.bound_value).get_ui())
                                                            : Json(r.bound_value);
    return j;
  }

  const PermGroup& g = group->group;
  if (op == "order") return {{"value", g.order().get_str()}};
  if (op == "degree") return {{"value", g.degree()}};
  if (op == "abstract_order") return {{"value", big_or_null(group->abstract_order)}};
  if (op == "kernel_order") return {{"value", big_or_null(group->kernel_order())}};
  if (op == "is_transitive") return {{"value", is_transitive(g)}};
  if (op == "is_primitive") return {{"value", is_transitive(g) && is_primitive(g)}};
  if (op == "two_transitive")
    return {{"value", is_transitive(g) && (g.degree() == 1 || suborbit_lengths(g).size() <= 2)}};
  if (op == "suborbits") {
    if (!is_transitive(g)) throw InputError("suborbits need a transitive group");
    return {{"value", suborbit_lengths(g)}};
  }
  if (op == "orbit_lengths") {
    Json l = Json::array();
    for (const auto& o : orbits(g)) l.push_back(o.size());
    return {{"value", l}};
  }
  if (op == "describe") {
    Json d = describe_json(*group, budget);
    d["value"] = d["order"];
    return d;
  }
  if (op == "composition_factors") {
    auto f = composition_factors(g, {}, budget);
    return {{"value", factors_summary(f)}, {"factors", factors_json(f)}};
  }
  if (op == "solvable") return {{"value", is_solvable(g)}};
  if (op == "gamma") {
    GammaAnswer a = in_gamma(g, static_cast<unsigned>(req_ulong(p, "d", "gamma")), budget);
    return {{"value", to_string(a.value)}, {"reason", a.reason}};
  }
  if (op == "gamma_profile") {
    GammaProfile gp = gamma_profile(composition_factors(g, {}, budget));
    return {{"value", gp.min_verified_d}, {"min_possible_d", gp.min_possible_d}};
  }
  if (op == "base_size") {
    std::size_t max_b = opt_ulong(p, "max_b", g.degree());
    unsigned threads = static_cast<unsigned>(opt_ulong(p, "threads", 1));
    return base_json(base_size_exact(g, max_b, budget, threads));
  }
  if (op == "greedy_base") {
    BaseWitness w = greedy_base(g);
    return {{"value", w.size}, {"points", points_json(w.points)}};
  }
  if (op == "base_lower_bound") return {{"value", base_lower_bound(g)}};
  if (op == "stab_scan") {
    ScanPredicate pred = parse_scan_predicate(p.value("predicate", std::string("solvable")));
    ScanReport rep = stabilizer_scan(g, req_ulong(p, "c", "stab_scan"), pred, budget);
    const char* verdict = rep.verdict == Tri::kYes ? "all-pass" : rep.verdict == Tri::kNo ? "fail" : "inconclusive";
    Json j = {{"value", verdict}, {"classes", rep.classes.size()}, {"exhaustive", rep.exhaustive},
              {"complete", rep.exhaustive}};
    Json orders = Json::array();
    for (const auto& c : rep.classes) orders.push_back(c.order.get_str());
    j["orders"] = orders;
    if (!rep.classes.empty()) {
      const ScanClass& w = rep.classes[rep.worst];
      j["max_order"] = w.order.get_str();
      j["worst"] = {{"tuple", points_json(w.tuple)}, {"order", w.order.get_str()}, {"structure", w.structure}};
    }
    return j;
  }
  if (op == "reg_count") {
    std::size_t t = req_ulong(p, "t", "reg_count");
    std::optional<BigInt> threshold;
    Json th = p.contains("threshold") ? p.at("threshold") : Json("auto");
    if (th.is_string() && th.get<std::string>() == "auto") threshold = g.order();
    else if (!(th.is_string() && th.get<std::string>() == "none")) threshold = as_bigint(th, "threshold");
    RegularCount rc = count_regular_tuples(g, t, threshold, budget);
    Json j = {{"count", rc.count.get_str()}, {"complete", rc.complete || rc.threshold_reached},
              {"threshold_reached", rc.threshold_reached}};
    if (threshold) j["threshold"] = threshold->get_str();
    j["value"] = rc.threshold_reached ? Json("threshold-reached") : Json(rc.count.get_str());
    if (rc.regular_orbits) j["regular_orbits"] = rc.regular_orbits->get_str();
    return j;
  }
  if (op == "dist_number") {
    auto r = distinguishing_number(g, opt_ulong(p, "max_degree", 64), budget);
    bool verified = coloring_stabilizer(g, r.witness, budget).order() == 1;
    return {{"value", r.number}, {"witness", r.witness.color}, {"verified", verified}};
  }
  if (op == "lemma22") return report_json(lemma22_check(g, static_cast<unsigned>(req_ulong(p, "d", "lemma22")), budget));
  if (op == "thm13")
    return report_json(theorem13_check(g, static_cast<unsigned>(req_ulong(p, "c", "thm13")),
                                       static_cast<unsigned>(req_ulong(p, "d", "thm13")),
                                       as_rational(req(p, "delta", "thm13"), "delta"), budget));
  if (op == "prod_check") {
    // measured b(G) <= ceil(log_|Delta| d(Q)) + b(L) for a product action of L wr Q
    LabeledAction l = build_recipe(req(p, "base", "prod_check"), budget);
    LabeledAction q = build_recipe(req(p, "top", "prod_check"), budget);
    BaseWitness bl = base_size_exact(l.group, l.degree(), budget);
    BaseWitness bg = base_size_exact(g, g.degree(), budget);
    if (!bl.complete || !bg.complete) throw ResourceError("base size search ran out of budget");
    std::size_t dq = distinguishing_number(q.group, 64, budget).number;
    unsigned long bound = prod_bound(BigInt(static_cast<unsigned long>(l.degree())),
                                     BigInt(static_cast<unsigned long>(dq)), bl.size);
    return {{"value", bg.size <= bound ? "holds" : "fails"},
            {"bound", bound},
            {"b_G", bg.size},
            {"b_L", bl.size},
            {"d_Q", dq},
            {"delta", l.degree()}};
  }
  throw InputError("operation '" + op + "' is not available");
}

bool expectation_matches(const Json& expected, const Json& measured) {
  if (expected.is_object()) {
    if (!measured.is_object()) return false;
    for (const auto& [k, v] : expected.items())
      if (!measured.contains(k) || !expectation_matches(v, measured.at(k))) return false;
    return true;
  }
  if (measured.is_object()) return measured.contains("value") && expectation_matches(expected, measured.at("value"));
  if (expected.is_array()) {
    if (!measured.is_array() || measured.size() != expected.size()) return false;
    for (std::size_t i = 0; i < expected.size(); ++i)
      if (!expectation_matches(expected[i], measured[i])) return false;
    return true;
  }
  auto scalar = [](const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); };
  return scalar(expected) == scalar(measured);
}

namespace {

const std::set<std::string> kProvenance = {"PAPER", "TRIVIAL", "DERIVED"};

void validate_manifest(const Json& m) {
  if (!m.is_object()) throw InputError("manifest must be a JSON object");
  if (m.contains("schema") && m.at("schema") != kManifestSchema)
    throw InputError("unsupported manifest schema " + m.at("schema").dump());
  if (!m.contains("checks")) throw InputError("manifest: missing 'checks'");
  if (!m.at("checks").is_array()) throw InputError("manifest: 'checks' must be an array");
  std::set<std::string> ids;
  for (const auto& c : m.at("checks")) {
    std::string id = req_string(c, "id", "check");
    if (!ids.insert(id).second) throw InputError("duplicate check id '" + id + "'");
    if (c.contains("recipe") && !c.at("recipe").is_object())
      throw InputError("check '" + id + "': recipe must be an object");
    const Json& as = req(c, "assertions", "check");
    if (!as.is_array()) throw InputError("check '" + id + "': assertions must be an array");
    for (const auto& a : as) {
      std::string op = req_string(a, "op", "assertion");
      if (!known_operations().count(op)) throw InputError("check '" + id + "': unknown operation '" + op + "'");
      if (needs_group(op) && !c.contains("recipe"))
        throw InputError("check '" + id + "': operation '" + op + "' needs a recipe");
      std::string prov = a.value("provenance", std::string("TRIVIAL"));
      if (!kProvenance.count(prov)) throw InputError("check '" + id + "': bad provenance '" + prov + "'");
      if (prov == "PAPER" && a.value("citation", std::string()).empty())
        throw InputError("check '" + id + "': PAPER assertions need a citation");
      if (!a.contains("expected")) throw InputError("check '" + id + "': assertion '" + op + "' has no expected value");
    }
  }
}

std::optional<long long> env_budget() {
  auto b = Budget::from_env();
  if (!b) return std::nullopt;
  return b->count();
}

Json run_check(const Json& c, long long budget_ms) {
  auto start = std::chrono::steady_clock::now();
  std::unique_ptr<Budget> budget =
      budget_ms > 0 ? std::make_unique<Budget>(std::chrono::milliseconds(budget_ms)) : std::make_unique<Budget>();
  Json out;
  out["id"] = c.at("id");
  if (c.contains("recipe")) out["recipe_hash"] = fnv1a_hex(c.at("recipe").dump());
  Json results = Json::array();
  bool any_fail = false, any_skip = false;
  std::optional<LabeledAction> group;
  std::string recipe_error;
  if (c.contains("recipe")) {
    try {
      group = build_recipe(c.at("recipe"), *budget);
    } catch (const ResourceError& e) {
      recipe_error = e.what();
    }
  }
  for (const auto& a : c.at("assertions")) {
    Json r;
    std::string op = a.at("op");
    r["op"] = op;
    if (a.contains("params")) r["params"] = a.at("params");
    r["expected"] = a.at("expected");
    r["provenance"] = a.value("provenance", std::string("TRIVIAL"));
    if (a.contains("citation")) r["citation"] = a.at("citation");
    if (!recipe_error.empty()) {
      r["status"] = "skipped-resource";
      r["reason"] = recipe_error;
      any_skip = true;
      results.push_back(r);
      continue;
    }
    try {
      Json measured = evaluate_operation(op, a.value("params", Json::object()), group ? &*group : nullptr, *budget);
      r["measured"] = measured;
      if (measured.is_object() && measured.contains("complete") && measured.at("complete") == false) {
        r["status"] = "skipped-resource";
        any_skip = true;
      } else if (expectation_matches(a.at("expected"), measured)) {
        r["status"] = "pass";
      } else {
        r["status"] = "fail";
        any_fail = true;
      }
    } catch (const ResourceError& e) {
      r["status"] = "skipped-resource";
      r["reason"] = e.what();
      any_skip = true;
    }
    results.push_back(r);
  }
  out["assertions"] = results;
  out["status"] = any_fail ? "fail" : any_skip ? "skipped-resource" : "pass";
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  out["timing"] = {{"wall_ms", static_cast<long long>(ms)}};
  return out;
}

}  // namespace

Json run_manifest(const Json& manifest, const RunOptions& opt, const std::string& source_hash) {
  validate_manifest(manifest);
  const Json& checks = manifest.at("checks");
  long long default_ms = opt.default_budget_ms ? *opt.default_budget_ms : env_budget().value_or(0);
  if (manifest.contains("budget_ms")) default_ms = static_cast<long long>(as_ulong(manifest.at("budget_ms"), "budget_ms"));
  std::vector<Json> results(checks.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < checks.size(); i = next++) {
      try {
        const Json& c = checks[i];
        long long ms = c.contains("budget_ms") ? static_cast<long long>(as_ulong(c.at("budget_ms"), "budget_ms"))
                                               : default_ms;
        results[i] = run_check(c, ms);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  unsigned nt = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(std::max<std::size_t>(1, checks.size()))));
  if (nt == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  Json report;
  report["schema"] = kReportSchema;
  report["tool_version"] = kToolVersion;
  report["input_hashes"] = {{"manifest", source_hash.empty() ? fnv1a_hex(manifest.dump()) : source_hash}};
  std::size_t pass = 0, fail = 0, skip = 0;
  for (const auto& r : results) {
    std::string s = r.at("status");
    pass += s == "pass";
    fail += s == "fail";
    skip += s == "skipped-resource";
  }
  report["checks"] = results;
  report["summary"] = {{"checks", results.size()}, {"pass", pass}, {"fail", fail}, {"skipped_resource", skip}};
  return report;
}

Json run_manifest_file(const std::string& path, const RunOptions& opt) {
  std::string text = read_text_file(path);
  Json m = parse_json_text(text, path);
  Json report = run_manifest(m, opt, fnv1a_hex(text));
  report["manifest"] = path;
  return report;
}

int report_exit_code(const Json& report) {
  const Json& s = report.at("summary");
  if (s.at("fail").get<std::size_t>() > 0) return 1;
  if (s.at("skipped_resource").get<std::size_t>() > 0) return 2;
  return 0;
}

}  // namespace permres
