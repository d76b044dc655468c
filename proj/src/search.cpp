#include "permres/search.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <random>
#include <thread>

#include "permres/errors.hpp"
#include "permres/stabchain.hpp"

namespace permres {

bool is_base(const PermGroup& g, std::span<const Point> points) {
  return pointwise_stabilizer(g, points).order() == 1;
}

std::size_t base_lower_bound(const PermGroup& g) {
  BigInt ord = g.order();
  if (ord == 1) return 0;
  return ceil_log(BigInt(static_cast<unsigned long>(g.degree())), ord);
}

BaseWitness greedy_base(const PermGroup& g) {
  BaseWitness w;
  PermGroup k = g;
  while (k.order() != 1) {
    auto orbs = orbits(k);
    const PointSet* best = &orbs.front();
    for (const auto& o : orbs)
      if (o.size() > best->size()) best = &o;
    w.points.push_back(best->front());
    k = point_stabilizer(k, best->front());
  }
  w.size = w.points.size();
  w.lower_bound = base_lower_bound(g);
  return w;
}

namespace {

// Is there a base of k of size <= r extending prefix? Branches over orbit representatives.
bool base_dfs(const PermGroup& k, std::size_t r, std::vector<Point>& prefix, Budget& budget,
              const std::function<bool()>& abandon) {
  budget.check("base search");
  if (abandon()) return false;
  BigInt ord = k.order();
  if (ord == 1) return true;
  if (r == 0) return false;
  auto orbs = orbits(k);
  std::size_t maxorb = 0;
  for (const auto& o : orbs) maxorb = std::max(maxorb, o.size());
  // each further point shrinks the stabilizer by at most the largest orbit length
  if (ipow(BigInt(static_cast<unsigned long>(maxorb)), static_cast<unsigned>(r)) < ord) return false;
  if (r == 1) {
    for (const auto& o : orbs)
      if (BigInt(static_cast<unsigned long>(o.size())) == ord) {
        prefix.push_back(o.front());
        return true;
      }
    return false;
  }
  for (const auto& o : orbs) {
    if (o.size() == 1) continue;
    prefix.push_back(o.front());
    if (base_dfs(point_stabilizer(k, o.front()), r - 1, prefix, budget, abandon)) return true;
    prefix.pop_back();
  }
  return false;
}

std::optional<std::vector<Point>> search_size(const PermGroup& g, std::size_t r, Budget& budget, unsigned threads) {
  std::vector<Point> reps;
  for (const auto& o : orbits(g))
    if (o.size() > 1) reps.push_back(o.front());
  std::vector<std::optional<std::vector<Point>>> found(reps.size());
  std::atomic<std::size_t> best{reps.size()}, next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&] {
    try {
      for (std::size_t i = next++; i < reps.size(); i = next++) {
        if (i > best.load()) break;
        std::vector<Point> prefix{reps[i]};
        auto abandon = [&best, i] { return best.load() < i; };
        if (base_dfs(point_stabilizer(g, reps[i]), r - 1, prefix, budget, abandon)) {
          found[i] = prefix;
          std::size_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mu);
      if (!error) error = std::current_exception();
      best = 0;
    }
  };
  unsigned nt = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(reps.size())));
  if (nt == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (error) std::rethrow_exception(error);
  for (auto& f : found)
    if (f) return f;
  return std::nullopt;
}

}  // namespace

BaseWitness base_size_exact(const PermGroup& g, std::size_t max_b, Budget& budget, unsigned threads) {
  BaseWitness greedy = greedy_base(g);
  BaseWitness w;
  w.lower_bound = base_lower_bound(g);
  if (g.order() == 1) {
    w.minimal = true;
    return w;
  }
  std::size_t r = std::max<std::size_t>(w.lower_bound, 1);
  try {
    for (; r <= max_b; ++r) {
      if (r == greedy.size) {
        w.points = greedy.points;
        break;
      }
      if (auto pts = search_size(g, r, budget, threads)) {
        w.points = *pts;
        break;
      }
    }
  } catch (const ResourceError&) {
    w.complete = false;
    w.lower_bound = r;
    w.points = greedy.points;
    w.size = greedy.size;
    return w;
  }
  if (w.points.empty()) {
    w.exceeds_max = true;
    w.lower_bound = max_b + 1;
    return w;
  }
  w.size = w.points.size();
  w.lower_bound = w.size;
  w.minimal = true;
  if (!is_base(g, w.points)) throw std::logic_error("base witness does not verify");
  return w;
}

PermGroup coloring_stabilizer(const PermGroup& g, const Coloring& c, Budget& budget) {
  if (c.color.size() != g.degree()) throw InputError("coloring length differs from the degree");
  PermGroup k = g;
  for (unsigned col = 0; col < c.colors && k.order() != 1; ++col) {
    std::vector<Point> cls;
    for (std::size_t i = 0; i < c.color.size(); ++i)
      if (c.color[i] == col) cls.push_back(static_cast<Point>(i));
    if (cls.empty() || cls.size() == g.degree()) continue;
    k = setwise_stabilizer(k, cls, budget);
  }
  return k;
}

namespace {

bool preserves_nontrivially(const StabilizerChain& chain, const std::vector<unsigned>& color, std::size_t colored,
                            Budget& budget) {
  auto image_ok = [&](Point b, Point x) {
    if (b >= colored && x >= colored) return true;
    if ((b >= colored) != (x >= colored)) return false;
    return color[b] == color[x];
  };
  auto element_ok = [&](const Permutation& p) {
    for (std::size_t x = 0; x < colored; ++x) {
      Point y = p[static_cast<Point>(x)];
      if (y >= colored || color[y] != color[x]) return false;
    }
    return true;
  };
  return find_nontrivial(chain, image_ok, element_ok, budget).has_value();
}

Coloring canonical(std::vector<unsigned> c, std::size_t r) {
  std::vector<int> relabel(r, -1);
  unsigned next = 0;
  for (auto& x : c) {
    if (relabel[x] < 0) relabel[x] = static_cast<int>(next++);
    x = static_cast<unsigned>(relabel[x]);
  }
  return Coloring{next, c};
}

struct ColoringSearch {
  std::size_t n, r;
  std::vector<StabilizerChain> fixing;  // fixing[i]: pointwise stabilizer of i..n-1
  Budget& budget;
  std::vector<unsigned> color;

  bool dfs(std::size_t i, unsigned used) {
    budget.check("coloring search");
    // some nontrivial element fixes the uncolored points and keeps the colors so far
    if (fixing[i].order() != 1 && preserves_nontrivially(fixing[i], color, i, budget)) return false;
    if (i == n) return true;
    for (unsigned c = 0; c < std::min<std::size_t>(used + 1, r); ++c) {
      color[i] = c;
      if (dfs(i + 1, std::max(used, c + 1))) return true;
    }
    return false;
  }
};

}  // namespace

DistinguishingResult distinguishing_number(const PermGroup& g, std::size_t max_degree, Budget& budget) {
  std::size_t n = g.degree();
  if (n > max_degree)
    throw ResourceError("distinguishing number search is capped at degree " + std::to_string(max_degree));
  BigInt ord = g.order();
  if (ord == 1) return {1, Coloring{1, std::vector<unsigned>(n, 0)}};
  // a distinguishing coloring has a regular orbit among the r^n colorings
  std::size_t r0 = 2;
  while (ipow(BigInt(static_cast<unsigned long>(r0)), static_cast<unsigned>(n)) < ord) ++r0;

  std::vector<Point> reversed(n);
  for (std::size_t i = 0; i < n; ++i) reversed[i] = static_cast<Point>(n - 1 - i);
  auto chain = chain_with_prefix(g, reversed);
  ColoringSearch s{n, 0, {}, budget, std::vector<unsigned>(n, 0)};
  for (std::size_t i = 0; i <= n; ++i) s.fixing.push_back(chain->suffix(n - i));

  std::mt19937_64 rng(0xd157ULL);
  for (std::size_t r = r0; r <= n; ++r) {
    for (int attempt = 0; attempt < 200; ++attempt) {
      std::vector<unsigned> c(n);
      for (auto& x : c) x = static_cast<unsigned>(rng() % r);
      if (!preserves_nontrivially(*chain, c, n, budget)) return {r, canonical(c, r)};
    }
    s.r = r;
    std::fill(s.color.begin(), s.color.end(), 0u);
    if (s.dfs(0, 0)) return {r, canonical(s.color, r)};
  }
  throw std::logic_error("no distinguishing coloring with n colors");
}

std::string ScanPredicate::name() const {
  return kind == Kind::kSolvable ? "solvable" : "gamma:" + std::to_string(d);
}

ScanPredicate parse_scan_predicate(const std::string& s) {
  if (s == "solvable") return {};
  if (s.rfind("gamma:", 0) == 0) {
    ScanPredicate p;
    p.kind = ScanPredicate::Kind::kGamma;
    try {
      p.d = std::stoul(s.substr(6));
    } catch (const std::exception&) {
      throw InputError("bad predicate '" + s + "'");
    }
    if (p.d < 5) throw InputError("gamma predicates need d >= 5");
    return p;
  }
  throw InputError("unknown predicate '" + s + "' (expected solvable or gamma:d)");
}

ScanReport stabilizer_scan(const PermGroup& g, std::size_t c, const ScanPredicate& pred, Budget& budget,
                           std::size_t max_reps) {
  if (c < 1) throw InputError("scan needs c >= 1");
  ScanReport rep;
  rep.c = c;
  rep.predicate = pred;
  auto visit = [&](const std::vector<Point>& tuple, const PermGroup& stab) {
    ScanClass cl;
    cl.tuple = tuple;
    cl.order = stab.order();
    std::vector<FactorDescriptor> factors;
    try {
      factors = composition_factors(stab, {}, budget);
      cl.structure = factors_summary(factors);
    } catch (const ResourceError&) {
      throw;
    } catch (const std::exception&) {
      cl.structure = "?";
    }
    if (pred.kind == ScanPredicate::Kind::kSolvable) {
      cl.verdict = is_solvable(stab) ? Tri::kYes : Tri::kNo;
    } else {
      cl.verdict = cl.structure == "?" ? in_gamma(stab, static_cast<unsigned>(pred.d), budget).value
                                       : in_gamma(factors, static_cast<unsigned>(pred.d)).value;
    }
    rep.classes.push_back(std::move(cl));
  };
  try {
    for_each_tuple_rep(g, c, visit, max_reps, budget);
  } catch (const ResourceError&) {
    rep.exhaustive = false;
  }
  bool any_no = false, any_unknown = !rep.exhaustive;
  for (std::size_t i = 0; i < rep.classes.size(); ++i) {
    any_no = any_no || rep.classes[i].verdict == Tri::kNo;
    any_unknown = any_unknown || rep.classes[i].verdict == Tri::kUnknown;
    if (rep.classes[i].order > rep.classes[rep.worst].order) rep.worst = i;
  }
  rep.verdict = any_no ? Tri::kNo : any_unknown ? Tri::kUnknown : Tri::kYes;
  return rep;
}

namespace {

struct TupleCounter {
  BigInt n;
  std::optional<BigInt> threshold;
  Budget& budget;
  BigInt total = 0;
  bool reached = false;

  // Adds weight * (number of completions of length r with trivial stabilizer in k).
  void dfs(const PermGroup& k, std::size_t r, const BigInt& weight) {
    if (reached) return;
    budget.check("regular tuple count");
    if (k.order() == 1) {
      total += weight * ipow(n, static_cast<unsigned>(r));
    } else if (r > 0) {
      for (const auto& o : orbits(k)) {
        BigInt w = weight * static_cast<unsigned long>(o.size());
        if (o.size() == 1)
          dfs(k, r - 1, w);  // fixed points leave k unchanged
        else
          dfs(point_stabilizer(k, o.front()), r - 1, w);
        if (reached) return;
      }
    }
    if (threshold && total >= *threshold) reached = true;
  }
};

}  // namespace

RegularCount count_regular_tuples(const PermGroup& l, std::size_t t, const std::optional<BigInt>& threshold,
                                  Budget& budget) {
  if (t < 1) throw InputError("tuple length must be positive");
  TupleCounter tc{BigInt(static_cast<unsigned long>(l.degree())), threshold, budget};
  RegularCount rc;
  try {
    tc.dfs(l, t, 1);
  } catch (const ResourceError&) {
    rc.complete = false;
  }
  rc.count = tc.total;
  rc.threshold_reached = tc.reached || (threshold && tc.total >= *threshold);
  if (rc.complete && !tc.reached) rc.regular_orbits = tc.total / l.order();
  return rc;
}

}  // namespace permres
