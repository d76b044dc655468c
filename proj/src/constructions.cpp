#include "permres/constructions.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <unordered_map>
#include <unordered_set>

#include "permres/errors.hpp"
#include "permres/stabchain.hpp"

namespace permres {

BigInt LabeledAction::kernel_order() const {
  if (abstract_order == 0) return 0;
  BigInt ord = group.order();
  if (abstract_order % ord != 0) return 0;
  return abstract_order / ord;
}

ObjectKind parse_object_kind(const std::string& s) {
  if (s == "vectors") return ObjectKind::kVectors;
  if (s == "points" || s == "1-spaces") return ObjectKind::kPoints;
  if (s == "subspaces") return ObjectKind::kSubspaces;
  throw InputError("unknown object kind '" + s + "'");
}

SubspaceFilter parse_subspace_filter(const std::string& s) {
  if (s == "all") return SubspaceFilter::kAll;
  if (s == "totally-isotropic" || s == "totally-singular") return SubspaceFilter::kTotallyIsotropic;
  if (s == "nondegenerate") return SubspaceFilter::kNondegenerate;
  if (s == "nonsingular") return SubspaceFilter::kNonsingular;
  throw InputError("unknown subspace filter '" + s + "'");
}

bool passes_filter(const FormSpec& form, const SubspaceFq& u, SubspaceFilter filter, int sign) {
  if (filter == SubspaceFilter::kAll) return true;
  if (form.kind == FormKind::kNone) throw InputError("subspace filters other than 'all' need a form");
  if (filter == SubspaceFilter::kNonsingular) {
    if (u.dim() != 1) throw InputError("the nonsingular filter applies to vectors and 1-spaces");
    FqVector v = u.basis().row(0);
    return form.quadratic() ? form.quadratic(v) != 0 : form.bilinear(v, v) != 0;
  }
  SubspaceClass c = subspace_type(form, u);
  if (filter == SubspaceFilter::kTotallyIsotropic)
    return form.quadratic() ? c.totally_singular : c.totally_isotropic;
  return c.nondegenerate && (sign == 0 || c.sign == sign);
}

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<FqField::Elem>& v) const {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : v) h = (h ^ x) * 1099511628211ULL;
    return h;
  }
};

FqVector normalize_point(const FqField& f, FqVector v) {
  std::size_t i = 0;
  while (i < v.size() && v[i] == 0) ++i;
  if (i == v.size()) throw InputError("the zero vector does not span a point");
  FqField::Elem s = f.inv(v[i]);
  for (auto& x : v) x = f.mul(x, s);
  return v;
}

// Finds a first object passing the filter when no seed is given.
SubspaceFq auto_seed(const FormSpec& form, const MatrixActionSpec& spec) {
  const FqField& f = *form.field;
  std::size_t d = form.dim, k = spec.kind == ObjectKind::kSubspaces ? spec.subspace_dim : 1;
  if (k == 0 || k > d) throw InputError("subspace dimension must lie in 1..dim");
  std::size_t total = 1;
  for (std::size_t i = 0; i < d && total <= 1000000; ++i) total *= f.q();
  if (k == 1) {
    for (std::size_t idx = 1; idx < total; ++idx) {
      auto u = SubspaceFq::span(form.field, {vector_from_index(idx, d, f.q())}, d);
      if (passes_filter(form, u, spec.filter, spec.sign)) return u;
    }
    throw InputError("no vector satisfies the filter");
  }
  if (spec.filter == SubspaceFilter::kAll) {
    std::vector<FqVector> rows;
    for (std::size_t i = 0; i < k; ++i) {
      FqVector v(d, 0);
      v[i] = 1;
      rows.push_back(v);
    }
    return SubspaceFq::span(form.field, rows, d);
  }
  if (spec.filter == SubspaceFilter::kTotallyIsotropic) {
    // greedy: every totally singular subspace extends to a maximal one
    std::vector<FqVector> rows;
    for (std::size_t idx = 1; idx < total && rows.size() < k; ++idx) {
      FqVector v = vector_from_index(idx, d, f.q());
      if (!form.isotropic(v)) continue;
      bool ok = true;
      for (const auto& r : rows) ok = ok && form.bilinear(v, r) == 0;
      if (!ok) continue;
      auto cand = rows;
      cand.push_back(v);
      if (SubspaceFq::span(form.field, cand, d).dim() == cand.size()) rows = cand;
    }
    if (rows.size() == k) return SubspaceFq::span(form.field, rows, d);
    throw InputError("no totally isotropic subspace of dimension " + std::to_string(k));
  }
  std::mt19937_64 rng(0x5eedULL);
  for (int attempt = 0; attempt < 200000; ++attempt) {
    std::vector<FqVector> rows;
    for (std::size_t i = 0; i < k; ++i) {
      FqVector v(d);
      for (auto& x : v) x = static_cast<FqField::Elem>(rng() % f.q());
      rows.push_back(v);
    }
    bool zero = true;
    for (const auto& r : rows)
      for (auto x : r) zero = zero && x == 0;
    if (zero) continue;
    auto u = SubspaceFq::span(form.field, rows, d);
    if (u.dim() == k && passes_filter(form, u, spec.filter, spec.sign)) return u;
  }
  throw InputError("no subspace found satisfying the filter");
}

}  // namespace

LabeledAction matrix_orbit_action(const std::vector<FqMatrix>& gens, const FormSpec& form,
                                  const MatrixActionSpec& spec, Budget& budget) {
  const FieldPtr& field = form.field;
  const FqField& f = *field;
  std::size_t d = form.dim;
  for (const auto& g : gens)
    if (g.rows() != d || g.cols() != d || g.field() != field)
      throw InputError("generator does not match the form's dimension or field");

  std::vector<FqField::Elem> seed_key;
  SubspaceFq seed;
  if (spec.seed) {
    seed = SubspaceFq::span(field, *spec.seed, d);
    std::size_t want = spec.kind == ObjectKind::kSubspaces ? spec.subspace_dim : 1;
    if (seed.dim() != want) throw InputError("seed does not span a subspace of the requested dimension");
    if (!passes_filter(form, seed, spec.filter, spec.sign)) throw InputError("seed does not satisfy the filter");
  } else {
    seed = auto_seed(form, spec);
  }
  switch (spec.kind) {
    case ObjectKind::kVectors:
      seed_key = spec.seed ? spec.seed->front() : seed.basis().row(0);
      break;
    case ObjectKind::kPoints:
      seed_key = normalize_point(f, seed.basis().row(0));
      break;
    case ObjectKind::kSubspaces:
      seed_key = seed.key();
      break;
  }

  auto image = [&](const std::vector<FqField::Elem>& key, const FqMatrix& g) -> std::vector<FqField::Elem> {
    switch (spec.kind) {
      case ObjectKind::kVectors:
        return vec_mat(key, g);
      case ObjectKind::kPoints:
        return normalize_point(f, vec_mat(key, g));
      case ObjectKind::kSubspaces: {
        std::size_t k = key.size() / d;
        FqMatrix rows(field, k, d);
        for (std::size_t i = 0; i < key.size(); ++i) rows.at(i / d, i % d) = key[i];
        return SubspaceFq::span(rows * g).key();
      }
    }
    return {};
  };

  std::vector<std::vector<FqField::Elem>> objects{seed_key};
  std::unordered_map<std::vector<FqField::Elem>, std::size_t, KeyHash> index{{seed_key, 0}};
  std::vector<std::vector<Point>> img(gens.size());
  for (std::size_t i = 0; i < objects.size(); ++i) {
    budget.check("matrix orbit enumeration");
    for (std::size_t j = 0; j < gens.size(); ++j) {
      auto y = image(objects[i], gens[j]);
      auto [it, inserted] = index.emplace(y, objects.size());
      if (inserted) {
        if (objects.size() >= spec.cap)
          throw ResourceError("orbit size exceeds the degree cap " + std::to_string(spec.cap));
        objects.push_back(std::move(y));
      }
      img[j].push_back(static_cast<Point>(it->second));
    }
  }
  std::vector<Permutation> perms;
  for (auto& v : img) perms.emplace_back(std::move(v));
  LabeledAction a;
  a.group = PermGroup(GeneratedGroup(objects.size(), std::move(perms)));
  for (const auto& key : objects) {
    switch (spec.kind) {
      case ObjectKind::kVectors: a.labels.push_back(format_vector(key)); break;
      case ObjectKind::kPoints: a.labels.push_back("<" + format_vector(key) + ">"); break;
      case ObjectKind::kSubspaces: {
        std::size_t k = key.size() / d;
        FqMatrix rows(field, k, d);
        for (std::size_t i = 0; i < key.size(); ++i) rows.at(i / d, i % d) = key[i];
        a.labels.push_back(SubspaceFq::span(rows).format());
        break;
      }
    }
  }
  return a;
}

LabeledAction coset_action(const PermGroup& g, const PermGroup& h, std::size_t cap, Budget& budget) {
  CosetSpace cs(g, h, cap, budget);
  LabeledAction a;
  ChainOptions opt;
  opt.base_hint = {0};
  a.group = PermGroup(GeneratedGroup(cs.size(), cs.generator_images()), opt);
  a.abstract_order = g.order();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    std::string s = "H";
    auto lab = cs.label(cs.representative(i));
    s += "[";
    for (std::size_t j = 0; j < lab.size(); ++j) s += (j ? "," : "") + std::to_string(lab[j] + 1);
    s += "]";
    a.labels.push_back(s);
  }
  // the image of H is the stabilizer of the trivial coset
  BigInt stab = a.group.chain().depth() ? a.group.chain().order_from(1) : BigInt(1);
  if (stab * g.order() != h.order() * a.group.order())
    throw std::logic_error("coset action: stabilizer of the trivial coset is not the image of H");
  return a;
}

std::vector<Permutation> symmetric_generators(std::size_t m, bool alt) {
  std::vector<Permutation> gens;
  if (m < 2 || (alt && m < 3)) return gens;
  std::vector<Point> cyc(m);
  std::iota(cyc.begin(), cyc.end(), Point{0});
  if (!alt) {
    gens.push_back(Permutation::from_cycles(m, {{0, 1}}));
    gens.push_back(Permutation::from_cycles(m, {cyc}));
    return gens;
  }
  gens.push_back(Permutation::from_cycles(m, {{0, 1, 2}}));
  if (m > 3) {
    if (m % 2) gens.push_back(Permutation::from_cycles(m, {cyc}));
    else gens.push_back(Permutation::from_cycles(m, {std::vector<Point>(cyc.begin() + 1, cyc.end())}));
  }
  return gens;
}

namespace {

BigInt sym_order(std::size_t m, bool alt) {
  BigInt r = factorial(m);
  return alt && m >= 2 ? BigInt(r / 2) : r;
}

std::string format_set(const std::vector<Point>& s) {
  std::string r = "{";
  for (std::size_t i = 0; i < s.size(); ++i) r += (i ? "," : "") + std::to_string(s[i] + 1);
  return r + "}";
}

LabeledAction finish_set_action(std::size_t m, bool alt, const std::vector<std::vector<std::vector<Point>>>& objs,
                                const std::string& label) {
  // objs: canonical objects (sorted list of sorted blocks)
  std::map<std::vector<std::vector<Point>>, std::size_t> index;
  for (std::size_t i = 0; i < objs.size(); ++i) index.emplace(objs[i], i);
  std::vector<Permutation> gens;
  for (const auto& s : symmetric_generators(m, alt)) {
    std::vector<Point> img(objs.size());
    for (std::size_t i = 0; i < objs.size(); ++i) {
      auto o = objs[i];
      for (auto& b : o) {
        for (auto& x : b) x = s[x];
        std::sort(b.begin(), b.end());
      }
      std::sort(o.begin(), o.end());
      img[i] = static_cast<Point>(index.at(o));
    }
    gens.emplace_back(std::move(img));
  }
  LabeledAction a;
  a.group = PermGroup(GeneratedGroup(objs.size(), std::move(gens), label));
  a.abstract_order = sym_order(m, alt);
  for (const auto& o : objs) {
    if (o.size() == 1) {
      a.labels.push_back(format_set(o[0]));
      continue;
    }
    std::string s = "{";
    for (std::size_t i = 0; i < o.size(); ++i) {
      if (i) s += "|";
      for (std::size_t j = 0; j < o[i].size(); ++j) s += (j ? "," : "") + std::to_string(o[i][j] + 1);
    }
    a.labels.push_back(s + "}");
  }
  return a;
}

void check_cap(const BigInt& degree, std::size_t cap) {
  if (degree > BigInt(static_cast<unsigned long>(cap)))
    throw ResourceError("degree " + degree.get_str() + " exceeds the degree cap " + std::to_string(cap));
}

}  // namespace

LabeledAction subsets_action(std::size_t m, std::size_t k, bool alt, std::size_t cap) {
  if (k < 1 || 2 * k >= m) throw InputError("subsets action needs 1 <= k < m/2");
  check_cap(binomial(m, k), cap);
  std::vector<std::vector<std::vector<Point>>> objs;
  std::vector<Point> c(k);
  std::iota(c.begin(), c.end(), Point{0});
  while (true) {
    objs.push_back({c});
    std::size_t i = k;
    while (i > 0 && c[i - 1] == m - k + i - 1) --i;
    if (i == 0) break;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
  return finish_set_action(m, alt, objs,
                           std::string(alt ? "A" : "S") + std::to_string(m) + " on " + std::to_string(k) + "-subsets");
}

namespace {

void partitions_rec(std::vector<Point>& rest, std::size_t k, std::vector<std::vector<Point>>& cur,
                    std::vector<std::vector<std::vector<Point>>>& out) {
  if (rest.empty()) {
    out.push_back(cur);
    return;
  }
  // the block holding the smallest remaining point
  Point first = rest.front();
  std::vector<Point> others(rest.begin() + 1, rest.end());
  std::vector<std::size_t> pick(k - 1);
  std::iota(pick.begin(), pick.end(), std::size_t{0});
  std::size_t r = others.size();
  while (true) {
    std::vector<Point> block{first};
    std::vector<char> used(r, 0);
    for (auto i : pick) {
      block.push_back(others[i]);
      used[i] = 1;
    }
    std::vector<Point> remaining;
    for (std::size_t i = 0; i < r; ++i)
      if (!used[i]) remaining.push_back(others[i]);
    cur.push_back(block);
    partitions_rec(remaining, k, cur, out);
    cur.pop_back();
    std::size_t i = k - 1;
    while (i > 0 && pick[i - 1] == r - (k - 1) + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < k - 1; ++j) pick[j] = pick[j - 1] + 1;
  }
}

}  // namespace

LabeledAction partitions_action(std::size_t m, std::size_t k, bool alt, std::size_t cap) {
  if (k < 2 || m % k != 0 || 2 * k > m) throw InputError("partitions action needs k | m and 1 < k <= m/2");
  BigInt deg = factorial(m) / (ipow(factorial(k), static_cast<unsigned>(m / k)) * factorial(m / k));
  check_cap(deg, cap);
  std::vector<Point> all(m);
  std::iota(all.begin(), all.end(), Point{0});
  std::vector<std::vector<Point>> cur;
  std::vector<std::vector<std::vector<Point>>> objs;
  partitions_rec(all, k, cur, objs);
  return finish_set_action(m, alt, objs,
                           std::string(alt ? "A" : "S") + std::to_string(m) + " on partitions into " +
                               std::to_string(m / k) + " blocks of size " + std::to_string(k));
}

LabeledAction affine_action(const std::vector<FqMatrix>& linear, const FieldPtr& field, std::size_t m,
                            const BigInt& linear_order, std::size_t cap) {
  const FqField& f = *field;
  check_cap(ipow(BigInt(f.q()), static_cast<unsigned>(m)), cap);
  std::size_t n = 1;
  for (std::size_t i = 0; i < m; ++i) n *= f.q();
  std::vector<Permutation> gens;
  for (const auto& g : linear) {
    if (g.rows() != m || g.cols() != m || g.field() != field) throw InputError("linear generator has wrong shape");
    if (!g.inverse()) throw InputError("linear generator is singular");
    std::vector<Point> img(n);
    for (std::size_t i = 0; i < n; ++i)
      img[i] = static_cast<Point>(vector_index(vec_mat(vector_from_index(i, m, f.q()), g), f.q()));
    gens.emplace_back(std::move(img));
  }
  for (unsigned b = 0; b < f.k(); ++b)
    for (std::size_t j = 0; j < m; ++j) {
      std::vector<Point> img(n);
      for (std::size_t i = 0; i < n; ++i) {
        FqVector v = vector_from_index(i, m, f.q());
        v[j] = f.add(v[j], f.exp(b));
        img[i] = static_cast<Point>(vector_index(v, f.q()));
      }
      gens.emplace_back(std::move(img));
    }
  LabeledAction a;
  a.group = PermGroup(GeneratedGroup(n, std::move(gens)));
  if (linear_order != 0) a.abstract_order = linear_order * n;
  for (std::size_t i = 0; i < n; ++i) a.labels.push_back(format_vector(vector_from_index(i, m, f.q())));
  return a;
}

namespace {

// One representative per orbit of the top group; base copies placed there suffice.
std::vector<std::size_t> top_orbit_reps(const PermGroup& p) {
  std::vector<std::size_t> reps;
  for (const auto& o : orbits(p)) reps.push_back(o.front());
  return reps;
}

std::string tuple_label(const std::vector<std::size_t>& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i] + 1);
  return s + ")";
}

}  // namespace

LabeledAction wreath_imprimitive(const PermGroup& l, const PermGroup& p, std::size_t cap) {
  std::size_t a = l.degree(), k = p.degree();
  check_cap(BigInt(static_cast<unsigned long>(a)) * static_cast<unsigned long>(k), cap);
  std::size_t n = a * k;
  std::vector<Permutation> gens;
  for (auto blk : top_orbit_reps(p))
    for (const auto& g : l.generators()) {
      std::vector<Point> img(n);
      std::iota(img.begin(), img.end(), Point{0});
      for (std::size_t d = 0; d < a; ++d) img[blk * a + d] = static_cast<Point>(blk * a + g[static_cast<Point>(d)]);
      gens.emplace_back(std::move(img));
    }
  for (const auto& pi : p.generators()) {
    std::vector<Point> img(n);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t d = 0; d < a; ++d) img[i * a + d] = static_cast<Point>(pi[static_cast<Point>(i)] * a + d);
    gens.emplace_back(std::move(img));
  }
  LabeledAction r;
  r.group = PermGroup(GeneratedGroup(n, std::move(gens)));
  r.abstract_order = ipow(l.order(), static_cast<unsigned>(k)) * p.order();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t d = 0; d < a; ++d) r.labels.push_back(tuple_label({i, d}));
  return r;
}

LabeledAction wreath_product_action(const PermGroup& l, const PermGroup& p, std::size_t cap) {
  std::size_t a = l.degree(), k = p.degree();
  check_cap(ipow(BigInt(static_cast<unsigned long>(a)), static_cast<unsigned>(k)), cap);
  std::size_t n = 1;
  std::vector<std::size_t> place(k);
  for (std::size_t i = 0; i < k; ++i) {
    place[i] = n;
    n *= a;
  }
  auto digits = [&](std::size_t x) {
    std::vector<std::size_t> t(k);
    for (std::size_t i = 0; i < k; ++i, x /= a) t[i] = x % a;
    return t;
  };
  std::vector<Permutation> gens;
  for (auto c : top_orbit_reps(p))
    for (const auto& g : l.generators()) {
      std::vector<Point> img(n);
      for (std::size_t x = 0; x < n; ++x) {
        std::size_t dc = x / place[c] % a;
        img[x] = static_cast<Point>(x - dc * place[c] + g[static_cast<Point>(dc)] * place[c]);
      }
      gens.emplace_back(std::move(img));
    }
  for (const auto& pi : p.generators()) {
    std::vector<Point> img(n);
    for (std::size_t x = 0; x < n; ++x) {
      auto t = digits(x);
      std::size_t y = 0;
      for (std::size_t i = 0; i < k; ++i) y += t[i] * place[pi[static_cast<Point>(i)]];
      img[x] = static_cast<Point>(y);
    }
    gens.emplace_back(std::move(img));
  }
  LabeledAction r;
  r.group = PermGroup(GeneratedGroup(n, std::move(gens)));
  r.abstract_order = ipow(l.order(), static_cast<unsigned>(k)) * p.order();
  for (std::size_t x = 0; x < n; ++x) r.labels.push_back(tuple_label(digits(x)));
  return r;
}

LabeledAction diagonal_type_group(const PermGroup& t, bool include_swap, const std::optional<Permutation>& outer,
                                  std::size_t cap) {
  check_cap(t.order(), cap);
  std::size_t size = t.order().get_ui();
  std::vector<Permutation> elems{Permutation(t.degree())};
  std::unordered_set<Permutation, PermutationHash> seen(elems.begin(), elems.end());
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : t.generators()) {
      Permutation y = elems[i] * g;
      if (seen.insert(y).second) elems.push_back(y);
    }
  if (elems.size() != size) throw std::logic_error("element enumeration disagrees with the group order");
  std::sort(elems.begin(), elems.end());
  std::unordered_map<Permutation, Point, PermutationHash> index;
  for (std::size_t i = 0; i < size; ++i) index.emplace(elems[i], static_cast<Point>(i));

  auto induced = [&](auto&& fn) {
    std::vector<Point> img(size);
    for (std::size_t i = 0; i < size; ++i) img[i] = index.at(fn(elems[i]));
    return Permutation(std::move(img));
  };
  std::vector<Permutation> gens;
  for (const auto& a : t.generators()) {
    Permutation ai = a.inverse();
    gens.push_back(induced([&](const Permutation& x) { return ai * x; }));
  }
  for (const auto& b : t.generators()) gens.push_back(induced([&](const Permutation& x) { return x * b; }));
  if (include_swap) gens.push_back(induced([](const Permutation& x) { return x.inverse(); }));
  if (outer) {
    if (outer->degree() != t.degree()) throw InputError("outer automorphism has the wrong degree");
    for (const auto& g : t.generators())
      if (!t.contains(g.conjugate(*outer))) throw InputError("supplied outer map does not normalize T");
    gens.push_back(induced([&](const Permutation& x) { return x.conjugate(*outer); }));
  }
  LabeledAction r;
  r.group = PermGroup(GeneratedGroup(size, std::move(gens)));
  if (!outer) r.abstract_order = t.order() * t.order() * (include_swap ? 2 : 1);
  for (const auto& e : elems) r.labels.push_back(format_cycles(e));
  return r;
}

}  // namespace permres
