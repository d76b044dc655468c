#include "permres/structure.hpp"

#include <algorithm>
#include <map>
#include <random>

#include <json.hpp>

#include "permres/errors.hpp"
#include "permres/stabchain.hpp"

namespace permres {

namespace detail {
extern const char* const kSimpleGroupsJson;
}

const char* to_string(Tri t) {
  switch (t) {
    case Tri::kNo: return "no";
    case Tri::kYes: return "yes";
    case Tri::kUnknown: return "unknown";
  }
  return "unknown";
}

const char* to_string(FactorKind k) {
  switch (k) {
    case FactorKind::kCyclic: return "cyclic";
    case FactorKind::kAlternating: return "alternating";
    case FactorKind::kIdentified: return "identified";
    case FactorKind::kUnknown: return "unknown";
  }
  return "unknown";
}

const std::vector<SimpleGroupEntry>& simple_group_table() {
  static const std::vector<SimpleGroupEntry> table = [] {
    auto j = nlohmann::json::parse(detail::kSimpleGroupsJson);
    if (j.at("schema") != "permres-simple-groups" || j.at("version") != 1)
      throw std::runtime_error("simple group table has an unexpected schema");
    std::vector<SimpleGroupEntry> out;
    for (const auto& e : j.at("groups")) {
      SimpleGroupEntry s;
      s.order = BigInt(e.at("order").get<std::string>());
      s.name = e.at("name").get<std::string>();
      if (!e.at("max_alt_section").is_null()) s.max_alt_section = e.at("max_alt_section").get<unsigned>();
      if (!e.at("disambiguator").is_null()) s.disambiguator = e.at("disambiguator").get<std::string>();
      out.push_back(std::move(s));
    }
    return out;
  }();
  return table;
}

std::vector<const SimpleGroupEntry*> table_lookup(const BigInt& order) {
  std::vector<const SimpleGroupEntry*> out;
  for (const auto& e : simple_group_table())
    if (e.order == order) out.push_back(&e);
  return out;
}

namespace {

// Least i with order | i!.
unsigned long min_factorial_multiple(const BigInt& order) {
  unsigned long best = 1;
  for (const auto& [p, e] : factorize(order)) {
    unsigned long pp = p.get_ui();
    unsigned long i = 0, v = 0;
    while (v < e) {
      i += pp;
      for (unsigned long t = i; t % pp == 0; t /= pp) ++v;
    }
    best = std::max(best, i);
  }
  return best;
}

// m with m!/2 == order, or 0.
unsigned alternating_degree(const BigInt& order) {
  BigInt f = 1;
  for (unsigned m = 2; m < 200; ++m) {
    f *= m;
    if (f / 2 == order && m >= 5) return m;
    if (f / 2 > order) break;
  }
  return 0;
}

}  // namespace

unsigned alt_section_upper_bound_simple(const BigInt& order) {
  unsigned long mu = min_factorial_multiple(order);
  unsigned best = 4;
  BigInt half_fact = 60;  // |A_5|
  for (unsigned j = 5;; ++j) {
    if (j > 5) half_fact *= j;
    if (half_fact > order) break;
    if (order % half_fact != 0) continue;
    // L of index order/|L| >= mu with |A_j| dividing |L|; the largest admissible L
    // has |L| = |A_j|, so the test is order/|A_j| >= mu.
    if (order / half_fact >= mu) best = j;
  }
  return best;
}

unsigned alt_section_upper_bound_any(const BigInt& order) {
  unsigned best = 4;
  BigInt half_fact = 60;
  for (unsigned j = 5;; ++j) {
    if (j > 5) half_fact *= j;
    if (half_fact > order) break;
    if (order % half_fact == 0) best = j;
  }
  return best;
}

FactorDescriptor cyclic_factor(const BigInt& p) {
  FactorDescriptor f;
  f.kind = FactorKind::kCyclic;
  f.order = p;
  f.name = "C" + p.get_str();
  f.degree_param = static_cast<unsigned>(p.get_ui());
  return f;
}

FactorDescriptor alternating_factor(unsigned m) {
  FactorDescriptor f;
  f.kind = FactorKind::kAlternating;
  f.order = factorial(m) / 2;
  f.name = "A" + std::to_string(m);
  f.degree_param = m;
  f.alt_lower = f.alt_upper = m;
  return f;
}

FactorDescriptor identify_simple(const BigInt& order, const std::function<BigInt()>& sample_order) {
  if (unsigned m = alternating_degree(order)) {
    if (m != 8) return alternating_factor(m);
    // A8 has elements of orders 6 and 15; L3(4) has neither.
    for (int i = 0; i < 600; ++i) {
      BigInt o = sample_order();
      if (o == 6 || o == 15) return alternating_factor(8);
    }
    FactorDescriptor f;
    f.kind = FactorKind::kIdentified;
    f.order = order;
    f.name = "L3(4)";
    f.alt_upper = alt_section_upper_bound_simple(order);
    return f;
  }
  FactorDescriptor f;
  f.order = order;
  auto hits = table_lookup(order);
  if (hits.size() == 1) {
    f.kind = FactorKind::kIdentified;
    f.name = hits[0]->name;
    f.alt_upper = alt_section_upper_bound_simple(order);
    if (hits[0]->max_alt_section) f.alt_lower = *hits[0]->max_alt_section;
    if (f.alt_lower > f.alt_upper)
      throw std::logic_error("simple group table contradicts the order bound for " + f.name);
    return f;
  }
  f.kind = FactorKind::kUnknown;
  if (hits.empty()) {
    f.name = "?" + order.get_str();
    f.simple_known = false;
    f.alt_upper = alt_section_upper_bound_any(order);
  } else {
    for (const auto* h : hits) f.name += (f.name.empty() ? "" : "|") + h->name;
    f.alt_upper = alt_section_upper_bound_simple(order);
  }
  return f;
}

PermGroup derived_subgroup(const PermGroup& g) {
  const auto& gens = g.generators();
  std::vector<Permutation> comms;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      Permutation c = gens[i].inverse() * gens[j].inverse() * gens[i] * gens[j];
      if (!c.is_identity()) comms.push_back(std::move(c));
    }
  return normal_closure(g, comms);
}

std::vector<PermGroup> derived_series(const PermGroup& g) {
  std::vector<PermGroup> s{with_few_generators(g)};
  while (!s.back().is_trivial()) {
    PermGroup d = with_few_generators(derived_subgroup(s.back()));
    if (d.order() == s.back().order()) break;
    s.push_back(std::move(d));
  }
  return s;
}

bool is_solvable(const PermGroup& g) { return derived_series(g).back().is_trivial(); }

PermGroup orbit_action(const PermGroup& g, const std::vector<Point>& pts,
                       std::optional<BigInt> image_order) {
  std::vector<std::int64_t> where(g.degree(), -1);
  for (std::size_t i = 0; i < pts.size(); ++i) where[pts[i]] = static_cast<std::int64_t>(i);
  std::vector<Permutation> gens;
  for (const auto& s : g.generators()) {
    std::vector<Point> img(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      auto w = where[s[pts[i]]];
      if (w < 0) throw InputError("points are not a union of orbits");
      img[i] = static_cast<Point>(w);
    }
    gens.emplace_back(std::move(img));
  }
  ChainOptions opt;
  opt.known_order = std::move(image_order);
  return PermGroup(GeneratedGroup(pts.size(), std::move(gens)), opt);
}

namespace {

std::vector<std::size_t> block_of(const std::vector<std::vector<Point>>& blocks, std::size_t n) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (Point x : blocks[i]) idx[x] = i;
  return idx;
}

Permutation induced_on_blocks(const Permutation& s, const std::vector<std::vector<Point>>& blocks,
                              const std::vector<std::size_t>& idx) {
  std::vector<Point> img(blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) img[i] = static_cast<Point>(idx[s[blocks[i][0]]]);
  return Permutation(std::move(img));
}

}  // namespace

PermGroup block_action(const PermGroup& g, const std::vector<std::vector<Point>>& blocks,
                       std::optional<BigInt> image_order) {
  auto idx = block_of(blocks, g.degree());
  std::vector<Permutation> gens;
  for (const auto& s : g.generators()) gens.push_back(induced_on_blocks(s, blocks, idx));
  ChainOptions opt;
  opt.known_order = std::move(image_order);
  return PermGroup(GeneratedGroup(blocks.size(), std::move(gens)), opt);
}

PermGroup block_kernel(const PermGroup& g, const std::vector<std::vector<Point>>& blocks) {
  // Act on points and blocks at once; the kernel is the pointwise stabilizer of
  // the block points, read back on the original points.
  std::size_t n = g.degree(), m = blocks.size();
  auto idx = block_of(blocks, n);
  std::vector<Permutation> gens;
  for (const auto& s : g.generators()) {
    std::vector<Point> img(n + m);
    for (std::size_t i = 0; i < n; ++i) img[i] = s[Point(i)];
    auto b = induced_on_blocks(s, blocks, idx);
    for (std::size_t i = 0; i < m; ++i) img[n + i] = static_cast<Point>(n + b[Point(i)]);
    gens.emplace_back(std::move(img));
  }
  ChainOptions opt;
  for (std::size_t i = 0; i < m; ++i) opt.base_hint.push_back(static_cast<Point>(n + i));
  opt.known_order = g.order();
  StabilizerChain c = StabilizerChain::build(GeneratedGroup(n + m, gens), opt);
  std::vector<Permutation> kgens;
  for (const auto& s : c.strong_generators(m)) {
    std::vector<Point> img(s.images().begin(), s.images().begin() + static_cast<std::ptrdiff_t>(n));
    kgens.emplace_back(std::move(img));
  }
  ChainOptions kopt;
  kopt.known_order = c.order_from(m);
  return PermGroup(GeneratedGroup(n, std::move(kgens)), kopt);
}

namespace {

class Descent {
 public:
  Descent(const CompositionOptions& opt, Budget& budget)
      : opt_(opt), budget_(budget), rng_(opt.seed) {}

  std::vector<FactorDescriptor> out;

  void run(const PermGroup& g0) {
    budget_.check("composition factors");
    BigInt order = g0.order();
    if (order == 1) return;
    auto fac = factorize(order);
    if (fac.size() == 1) {
      for (unsigned i = 0; i < fac[0].second; ++i) out.push_back(cyclic_factor(fac[0].first));
      return;
    }
    PermGroup g = with_few_generators(g0, rng_());
    std::size_t n = g.degree();

    auto orbs = orbits(g);
    if (orbs.size() > 1) {
      const PointSet* best = nullptr;
      for (const auto& o : orbs)
        if (o.size() > 1 && (!best || o.size() > best->size())) best = &o;
      PermGroup kernel = pointwise_stabilizer(g, *best);
      PermGroup image = orbit_action(g, *best, order / kernel.order());
      if (kernel.order() == 1) {
        run(image);
        return;
      }
      run(kernel);
      run(image);
      return;
    }

    if (n >= 5) {
      BigInt nf = factorial(static_cast<unsigned>(n));
      if (order == nf || order == nf / 2) {
        out.push_back(alternating_factor(static_cast<unsigned>(n)));
        if (order == nf) out.push_back(cyclic_factor(2));
        return;
      }
    }

    auto systems = minimal_block_systems(g);
    if (!systems.empty()) {
      // the coarsest of the minimal systems gives the smallest image
      const BlockSystem* sys = &systems[0];
      for (const auto& s : systems)
        if (s.size() < sys->size()) sys = &s;
      PermGroup kernel = block_kernel(g, *sys);
      PermGroup image = block_action(g, *sys, order / kernel.order());
      run(kernel);
      run(image);
      return;
    }

    PermGroup d = derived_subgroup(g);
    if (d.order() != order) {
      for (const auto& [p, e] : factorize(order / d.order()))
        for (unsigned i = 0; i < e; ++i) out.push_back(cyclic_factor(p));
      run(d);
      return;
    }

    if (auto nsub = proper_normal_subgroup(g)) {
      run(*nsub);
      CosetSpace cs(g, *nsub, opt_.max_quotient_degree, budget_);
      ChainOptions qopt;
      qopt.known_order = order / nsub->order();
      run(PermGroup(GeneratedGroup(cs.size(), cs.generator_images()), qopt));
      return;
    }

    auto sampler = [&]() { return g.chain().random_element(rng_).order(); };
    out.push_back(identify_simple(order, sampler));
  }

 private:
  std::optional<PermGroup> proper_normal_subgroup(const PermGroup& g) {
    BigInt order = g.order();
    std::vector<Permutation> cands = g.generators();
    for (int i = 0; i < opt_.normal_probe_samples; ++i) {
      Permutation x = g.chain().random_element(rng_);
      BigInt o = x.order();
      for (const auto& [p, e] : factorize(o)) {
        BigInt k = o / p;
        cands.push_back(x.pow(static_cast<long long>(k.get_si())));
      }
    }
    for (const auto& x : cands) {
      budget_.check("normal subgroup probe");
      if (x.is_identity()) continue;
      PermGroup nc = normal_closure(g, {x}, &order);
      if (nc.order() != order) return nc;
    }
    return std::nullopt;
  }

  const CompositionOptions& opt_;
  Budget& budget_;
  std::mt19937_64 rng_;
};

}  // namespace

std::vector<FactorDescriptor> composition_factors(const PermGroup& g, const CompositionOptions& opt,
                                                  Budget& budget) {
  if (g.order() > opt.max_order)
    throw ResourceError("group order " + g.order().get_str() + " exceeds composition bound " +
                        opt.max_order.get_str());
  Descent d(opt, budget);
  d.run(g);
  BigInt prod = 1;
  for (const auto& f : d.out) prod *= f.order;
  if (prod != g.order()) throw std::logic_error("composition factor orders do not multiply to |G|");
  return d.out;
}

std::string factors_summary(const std::vector<FactorDescriptor>& f) {
  std::map<std::pair<BigInt, std::string>, int, std::greater<>> count;
  for (const auto& x : f) ++count[{x.order, x.name}];
  std::string out;
  for (const auto& [key, c] : count) {
    if (!out.empty()) out += ", ";
    out += key.second;
    if (c > 1) out += "^" + std::to_string(c);
  }
  return out.empty() ? "1" : out;
}

GammaAnswer in_gamma(const std::vector<FactorDescriptor>& factors, unsigned d) {
  if (d < 5) throw InputError("in_gamma needs d >= 5");
  GammaAnswer a{Tri::kYes, "every composition factor has no A" + std::to_string(d) + " section"};
  for (const auto& f : factors) {
    if (f.alt_upper < d) continue;
    if (f.alt_lower >= d)
      return {Tri::kNo, "factor " + f.name + " has an A" + std::to_string(f.alt_lower) + " section"};
    a = {Tri::kUnknown, "factor " + f.name + " is not resolved for d=" + std::to_string(d)};
  }
  return a;
}

GammaAnswer in_gamma(const PermGroup& g, unsigned d, Budget& budget) {
  if (d < 5) throw InputError("in_gamma needs d >= 5");
  return in_gamma(composition_factors(g, {}, budget), d);
}

GammaProfile gamma_profile(const std::vector<FactorDescriptor>& factors) {
  GammaProfile p;
  for (const auto& f : factors) {
    p.min_verified_d = std::max(p.min_verified_d, f.alt_upper + 1);
    p.min_possible_d = std::max(p.min_possible_d, f.alt_lower + 1);
  }
  return p;
}

}  // namespace permres
