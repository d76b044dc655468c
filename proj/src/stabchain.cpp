#include "permres/stabchain.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "permres/errors.hpp"

namespace permres {

PointSet orbit(const std::vector<Permutation>& gens, std::size_t degree, Point a) {
  std::vector<char> seen(degree, 0);
  PointSet out{a};
  seen[a] = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& g : gens) {
      Point y = g[out[i]];
      if (!seen[y]) {
        seen[y] = 1;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PointSet> orbits(const std::vector<Permutation>& gens, std::size_t degree) {
  std::vector<char> seen(degree, 0);
  std::vector<PointSet> out;
  for (Point a = 0; a < degree; ++a) {
    if (seen[a]) continue;
    PointSet o = orbit(gens, degree, a);
    for (Point x : o) seen[x] = 1;
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<PointSet> orbits(const PermGroup& g) { return orbits(g.generators(), g.degree()); }

bool is_transitive(const PermGroup& g) {
  return orbit(g.generators(), g.degree(), 0).size() == g.degree();
}

namespace {

struct UnionFind {
  std::vector<Point> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), Point{0}); }
  Point find(Point x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(Point a, Point b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

// Block label of each point, as index into the sorted block list.
std::vector<std::size_t> block_index(const BlockSystem& sys, std::size_t degree) {
  std::vector<std::size_t> idx(degree);
  for (std::size_t i = 0; i < sys.size(); ++i)
    for (Point x : sys[i]) idx[x] = i;
  return idx;
}

bool refines(const BlockSystem& fine, const BlockSystem& coarse, std::size_t degree) {
  auto idx = block_index(coarse, degree);
  for (const auto& b : fine)
    for (Point x : b)
      if (idx[x] != idx[b[0]]) return false;
  return true;
}

}  // namespace

BlockSystem finest_block_system(const PermGroup& g, Point a, Point b) {
  std::size_t n = g.degree();
  UnionFind uf(n);
  std::vector<std::pair<Point, Point>> queue;
  if (uf.unite(a, b)) queue.emplace_back(a, b);
  // Every union is recorded as a pair; closing each pair under the generators
  // makes the partition invariant.
  for (std::size_t i = 0; i < queue.size(); ++i) {
    auto [x, y] = queue[i];
    for (const auto& s : g.generators()) {
      Point u = s[x], v = s[y];
      if (uf.unite(u, v)) queue.emplace_back(u, v);
    }
  }
  std::vector<PointSet> by_root(n);
  for (Point x = 0; x < n; ++x) by_root[uf.find(x)].push_back(x);
  BlockSystem sys;
  for (auto& blk : by_root)
    if (!blk.empty()) sys.push_back(std::move(blk));
  std::sort(sys.begin(), sys.end());
  return sys;
}

std::vector<BlockSystem> minimal_block_systems(const PermGroup& g) {
  if (!is_transitive(g)) throw InputError("block systems need a transitive group");
  std::size_t n = g.degree();
  std::vector<BlockSystem> found;
  std::set<BlockSystem> seen;
  for (Point b = 1; b < n; ++b) {
    BlockSystem sys = finest_block_system(g, 0, b);
    if (sys.size() == 1) continue;
    if (seen.insert(sys).second) found.push_back(std::move(sys));
  }
  std::vector<BlockSystem> minimal;
  for (std::size_t i = 0; i < found.size(); ++i) {
    bool is_min = true;
    for (std::size_t j = 0; j < found.size() && is_min; ++j)
      if (j != i && refines(found[j], found[i], n)) is_min = false;
    if (is_min) minimal.push_back(found[i]);
  }
  return minimal;
}

bool is_primitive(const PermGroup& g) {
  if (!is_transitive(g)) return false;
  for (Point b = 1; b < g.degree(); ++b)
    if (finest_block_system(g, 0, b).size() != 1) return false;
  return true;
}

std::shared_ptr<const StabilizerChain> chain_with_prefix(const PermGroup& g,
                                                         std::span<const Point> prefix) {
  auto base = g.chain().base();
  if (prefix.size() <= base.size() && std::equal(prefix.begin(), prefix.end(), base.begin()))
    return g.chain_ptr();
  ChainOptions opt;
  opt.base_hint.assign(prefix.begin(), prefix.end());
  opt.known_order = g.order();
  std::vector<Permutation> gens = g.generators();
  return std::make_shared<const StabilizerChain>(
      StabilizerChain::build(GeneratedGroup(g.degree(), std::move(gens)), opt));
}

PermGroup chain_subgroup(std::shared_ptr<const StabilizerChain> chain, std::size_t i) {
  auto sub = std::make_shared<const StabilizerChain>(chain->suffix(i));
  std::vector<Permutation> gens = chain->strong_generators(i);
  return PermGroup(GeneratedGroup(chain->degree(), std::move(gens)), std::move(sub));
}

PermGroup point_stabilizer(const PermGroup& g, Point a) {
  if (a >= g.degree()) throw InputError("point exceeds degree");
  Point pts[1] = {a};
  return chain_subgroup(chain_with_prefix(g, pts), 1);
}

PermGroup pointwise_stabilizer(const PermGroup& g, std::span<const Point> points) {
  std::vector<Point> pts;
  std::vector<char> seen(g.degree(), 0);
  for (Point p : points) {
    if (p >= g.degree()) throw InputError("point exceeds degree");
    if (!seen[p]) {
      seen[p] = 1;
      pts.push_back(p);
    }
  }
  return chain_subgroup(chain_with_prefix(g, pts), pts.size());
}

namespace {

// Depth-first walk over x = u_{k-1} ... u_{l+1} * start, choosing u_i level by level.
class ChainWalker {
 public:
  ChainWalker(const StabilizerChain& c, const ImageTest& image_ok, const ElementTest& element_ok,
              Budget& budget, bool want_nontrivial)
      : c_(c), image_ok_(image_ok), element_ok_(element_ok), budget_(budget),
        want_nontrivial_(want_nontrivial) {}

  std::optional<Permutation> run(std::size_t level, const Permutation& p) {
    budget_.check("backtrack search");
    if (level == c_.depth()) {
      if (want_nontrivial_ && p.is_identity()) return std::nullopt;
      if (element_ok_ && !element_ok_(p)) return std::nullopt;
      return p;
    }
    const auto& lv = c_.level(level);
    for (std::size_t oi = 0; oi < lv.orbit.size(); ++oi) {
      Point beta = lv.orbit[oi];
      Point img = p[beta];
      if (!image_ok_(lv.base_point, img)) continue;
      if (auto r = run(level + 1, lv.reps[oi] * p)) return r;
    }
    return std::nullopt;
  }

 private:
  const StabilizerChain& c_;
  const ImageTest& image_ok_;
  const ElementTest& element_ok_;
  Budget& budget_;
  bool want_nontrivial_;
};

}  // namespace

PermGroup subgroup_search(const PermGroup& g, std::span<const Point> prefix,
                          const ImageTest& image_ok, const ElementTest& element_ok,
                          const std::vector<Permutation>& known, Budget& budget) {
  auto c = chain_with_prefix(g, prefix);
  std::size_t n = g.degree();
  ChainOptions kopt;
  kopt.base_hint = c->base();
  StabilizerChain k = StabilizerChain::build(GeneratedGroup(n, known), kopt);
  if (k.depth() != c->depth()) throw InputError("known elements do not lie in the group");

  ChainWalker walker(*c, image_ok, element_ok, budget, false);
  for (std::size_t l = c->depth(); l-- > 0;) {
    const auto& lv = c->level(l);
    Point b = lv.base_point;
    PointSet cands = lv.orbit;
    std::sort(cands.begin(), cands.end());
    for (Point gamma : cands) {
      if (gamma == b || !image_ok(b, gamma)) continue;
      // gamma must be the least point of its orbit under the subgroup found so
      // far at this level, and that orbit must not contain b
      PointSet o = orbit(k.strong_generators(l), n, gamma);
      if (o.front() < gamma || std::binary_search(o.begin(), o.end(), b)) continue;
      if (auto x = walker.run(l + 1, lv.rep(gamma))) k.extend(*x);
    }
  }
  auto kp = std::make_shared<const StabilizerChain>(std::move(k));
  std::vector<Permutation> gens = kp->strong_generators(0);
  return PermGroup(GeneratedGroup(n, std::move(gens)), std::move(kp));
}

std::optional<Permutation> find_nontrivial(const StabilizerChain& chain, const ImageTest& image_ok,
                                           const ElementTest& element_ok, Budget& budget) {
  ChainWalker walker(chain, image_ok, element_ok, budget, true);
  return walker.run(0, Permutation(chain.degree()));
}

PermGroup setwise_stabilizer(const PermGroup& g, std::span<const Point> set, Budget& budget) {
  std::size_t n = g.degree();
  std::vector<char> in(n, 0);
  PointSet delta;
  for (Point p : set) {
    if (p >= n) throw InputError("point exceeds degree");
    if (!in[p]) {
      in[p] = 1;
      delta.push_back(p);
    }
  }
  if (delta.empty() || delta.size() == n) return g;
  std::sort(delta.begin(), delta.end());
  auto image_ok = [&](Point b, Point img) { return in[b] == in[img]; };
  auto element_ok = [&](const Permutation& x) {
    for (Point p : delta)
      if (!in[x[p]]) return false;
    return true;
  };
  PermGroup fix = pointwise_stabilizer(g, delta);
  std::vector<Permutation> known = fix.generators();
  return subgroup_search(g, delta, image_ok, element_ok, known, budget);
}

PermGroup normal_closure(const PermGroup& g, const std::vector<Permutation>& xs,
                         const BigInt* stop_at) {
  std::size_t n = g.degree();
  StabilizerChain c(n);
  std::vector<Permutation> gens;
  bool full = false;
  auto add = [&](const Permutation& x) {
    if (full || x.is_identity() || c.contains(x)) return;
    c.extend(x);
    gens.push_back(x);
    if (stop_at && c.order() == *stop_at) full = true;
  };
  for (const auto& x : xs) add(x);
  for (std::size_t i = 0; i < gens.size() && !full; ++i)
    for (const auto& s : g.generators()) add(gens[i].conjugate(s));
  if (full) return g;
  return PermGroup(GeneratedGroup(n, std::move(gens)),
                   std::make_shared<const StabilizerChain>(std::move(c)));
}

PermGroup with_few_generators(const PermGroup& g, std::uint64_t seed) {
  if (g.generators().size() <= 4) return g;
  std::mt19937_64 rng(seed);
  StabilizerChain c(g.degree());
  std::vector<Permutation> gens;
  BigInt target = g.order();
  while (c.order() != target) {
    Permutation x = g.chain().random_element(rng);
    if (x.is_identity() || c.contains(x)) continue;
    c.extend(x);
    gens.push_back(std::move(x));
  }
  GeneratedGroup gg(g.degree(), std::move(gens), g.label());
  return PermGroup(std::move(gg), g.chain_ptr());
}

PermGroup subgroup(std::size_t degree, const std::vector<Permutation>& gens, const ChainOptions& opt) {
  return PermGroup(GeneratedGroup(degree, gens), opt);
}

namespace {

void tuple_rec(const PermGroup& k, std::vector<Point>& tuple, std::size_t c,
               const TupleVisitor& visit, std::size_t max_reps, std::size_t& count,
               Budget& budget) {
  budget.check("tuple orbit tree");
  if (tuple.size() == c) {
    if (++count > max_reps)
      throw ResourceError("orbit tree exceeds " + std::to_string(max_reps) + " representatives");
    visit(tuple, k);
    return;
  }
  std::vector<char> used(k.degree(), 0);
  for (Point p : tuple) used[p] = 1;
  for (const auto& o : orbits(k)) {
    Point rep = o.front();
    if (used[rep]) continue;
    tuple.push_back(rep);
    tuple_rec(point_stabilizer(k, rep), tuple, c, visit, max_reps, count, budget);
    tuple.pop_back();
  }
}

}  // namespace

std::size_t for_each_tuple_rep(const PermGroup& g, std::size_t c, const TupleVisitor& visit,
                               std::size_t max_reps, Budget& budget) {
  std::vector<Point> tuple;
  std::size_t count = 0;
  if (c > g.degree()) return 0;
  tuple_rec(g, tuple, c, visit, max_reps, count, budget);
  return count;
}

}  // namespace permres

namespace permres {

std::size_t CosetSpace::LabelHash::operator()(const std::vector<Point>& v) const {
  std::uint64_t h = 1469598103934665603ULL;
  for (Point x : v) {
    h ^= x;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

CosetSpace::CosetSpace(const PermGroup& g, const PermGroup& h, std::size_t max_index,
                       Budget& budget) {
  std::size_t n = g.degree();
  if (h.degree() != n) throw InputError("subgroup degree differs from group degree");
  for (const auto& s : h.generators())
    if (!g.contains(s)) throw InputError("coset action: H is not a subgroup of G");
  BigInt index = g.order() / h.order();
  if (index > max_index)
    throw ResourceError("coset index " + index.get_str() + " exceeds cap " + std::to_string(max_index));
  ChainOptions opt;
  opt.base_hint = g.chain().base();
  opt.known_order = h.order();
  h_chain_ = std::make_shared<const StabilizerChain>(StabilizerChain::build(h.generated(), opt));

  reps_.push_back(Permutation(n));
  index_.emplace(label(reps_[0]), 0);
  std::vector<std::vector<Point>> images(g.generators().size());
  for (std::size_t i = 0; i < reps_.size(); ++i) {
    budget.check("coset enumeration");
    for (std::size_t k = 0; k < g.generators().size(); ++k) {
      Permutation y = reps_[i] * g.generators()[k];
      auto [it, fresh] = index_.emplace(label(y), reps_.size());
      if (fresh) reps_.push_back(std::move(y));
      images[k].push_back(static_cast<Point>(it->second));
    }
  }
  if (index != static_cast<unsigned long>(reps_.size()))
    throw InputError("coset enumeration found " + std::to_string(reps_.size()) +
                     " cosets, expected " + index.get_str());
  for (auto& im : images) gen_images_.emplace_back(std::move(im));
}

std::vector<Point> CosetSpace::label(const Permutation& x) const {
  Permutation y = x;
  std::vector<Point> out;
  out.reserve(h_chain_->depth());
  for (std::size_t i = 0; i < h_chain_->depth(); ++i) {
    const auto& lv = h_chain_->level(i);
    std::size_t best = 0;
    for (std::size_t k = 1; k < lv.orbit.size(); ++k)
      if (y[lv.orbit[k]] < y[lv.orbit[best]]) best = k;
    if (best) y = lv.reps[best] * y;
    out.push_back(y[lv.base_point]);
  }
  return out;
}

std::size_t CosetSpace::index_of(const Permutation& x) const {
  auto it = index_.find(label(x));
  if (it == index_.end()) throw InputError("element does not lie in the group");
  return it->second;
}

Permutation CosetSpace::act(const Permutation& x) const {
  std::vector<Point> img(reps_.size());
  for (std::size_t i = 0; i < reps_.size(); ++i)
    img[i] = static_cast<Point>(index_of(reps_[i] * x));
  return Permutation(std::move(img));
}

}  // namespace permres
