#include <algorithm>
#include <limits>

#include "permres/errors.hpp"
#include "permres/group.hpp"

namespace permres {

GeneratedGroup::GeneratedGroup(std::size_t degree_, std::vector<Permutation> gens, std::string label_)
    : degree(degree_), generators(std::move(gens)), label(std::move(label_)) {
  if (degree == 0) throw InputError("group degree must be positive");
  for (const auto& g : generators)
    if (g.degree() != degree) throw InputError("generator degree differs from group degree");
  if (generators.empty()) generators.push_back(Permutation(degree));
}

RandomElements::RandomElements(const std::vector<Permutation>& gens, std::size_t degree,
                               std::uint64_t seed)
    : acc_(degree), rng_(seed) {
  for (const auto& g : gens)
    if (!g.is_identity()) state_.push_back(g);
  if (state_.empty()) state_.push_back(Permutation(degree));
  std::size_t base = state_.size();
  while (state_.size() < 10) state_.push_back(state_[state_.size() % base]);
  for (int i = 0; i < 50; ++i) next();
}

Permutation RandomElements::next() {
  std::uniform_int_distribution<std::size_t> pick(0, state_.size() - 1);
  std::size_t s = pick(rng_);
  std::size_t t = pick(rng_);
  while (t == s && state_.size() > 1) t = pick(rng_);
  bool left = rng_() & 1;
  bool inv = rng_() & 1;
  const Permutation other = inv ? state_[t].inverse() : state_[t];
  state_[s] = left ? other * state_[s] : state_[s] * other;
  acc_ = acc_ * state_[s];
  return acc_;
}

std::vector<Point> StabilizerChain::base() const {
  std::vector<Point> b;
  b.reserve(levels_.size());
  for (const auto& lv : levels_) b.push_back(lv.base_point);
  return b;
}

BigInt StabilizerChain::order() const { return order_from(0); }

BigInt StabilizerChain::order_from(std::size_t i) const {
  BigInt r = 1;
  for (; i < levels_.size(); ++i) r *= static_cast<unsigned long>(levels_[i].orbit.size());
  return r;
}

bool StabilizerChain::contains(const Permutation& p) const {
  if (p.degree() != degree_) throw InputError("degree mismatch in membership test");
  auto [h, j] = sift(p);
  return j == levels_.size() && h.is_identity();
}

std::pair<Permutation, std::size_t> StabilizerChain::sift(Permutation p, std::size_t from) const {
  for (std::size_t i = from; i < levels_.size(); ++i) {
    const Level& lv = levels_[i];
    Point b = p[lv.base_point];
    if (lv.position[b] < 0) return {std::move(p), i};
    if (b != lv.base_point) p *= lv.inv_rep(b);
  }
  return {std::move(p), levels_.size()};
}

const std::vector<Permutation>& StabilizerChain::strong_generators(std::size_t i) const {
  static const std::vector<Permutation> none;
  return i < levels_.size() ? levels_[i].gens : none;
}

StabilizerChain StabilizerChain::suffix(std::size_t i) const {
  StabilizerChain c(degree_);
  c.levels_.assign(levels_.begin() + static_cast<std::ptrdiff_t>(std::min(i, levels_.size())),
                   levels_.end());
  return c;
}

Permutation StabilizerChain::random_element(std::mt19937_64& rng) const {
  Permutation g(degree_);
  // Elements are u_{k-1} ... u_1 u_0 with u_i drawn from level i.
  for (std::size_t i = levels_.size(); i-- > 0;) {
    const Level& lv = levels_[i];
    std::uniform_int_distribution<std::size_t> pick(0, lv.orbit.size() - 1);
    g *= lv.reps[pick(rng)];
  }
  return g;
}

std::size_t StabilizerChain::add_level(Point b) {
  Level lv;
  lv.base_point = b;
  lv.position.assign(degree_, -1);
  lv.position[b] = 0;
  lv.orbit.push_back(b);
  lv.reps.push_back(Permutation(degree_));
  lv.inv_reps.push_back(Permutation(degree_));
  levels_.push_back(std::move(lv));
  return levels_.size() - 1;
}

void StabilizerChain::extend_orbit(Level& lv, std::size_t first_new_gen) {
  std::size_t old_size = lv.orbit.size();
  for (std::size_t oi = 0; oi < lv.orbit.size(); ++oi) {
    std::size_t g0 = oi < old_size ? first_new_gen : 0;
    for (std::size_t gi = g0; gi < lv.gens.size(); ++gi) {
      Point y = lv.gens[gi][lv.orbit[oi]];
      if (lv.position[y] >= 0) continue;
      lv.position[y] = static_cast<std::int32_t>(lv.orbit.size());
      lv.orbit.push_back(y);
      lv.reps.push_back(lv.reps[oi] * lv.gens[gi]);
      lv.inv_reps.push_back(lv.reps.back().inverse());
    }
  }
}

void StabilizerChain::add_strong(const Permutation& h, std::size_t from, std::size_t to) {
  for (std::size_t l = from; l <= to && l < levels_.size(); ++l) {
    Level& lv = levels_[l];
    lv.gens.push_back(h);
    lv.tested.resize(lv.gens.size());
    extend_orbit(lv, lv.gens.size() - 1);
  }
}

Point StabilizerChain::choose_base_point(const Permutation& h) {
  Point best = 0;
  std::size_t best_len = 0;
  for (const auto& c : h.cycles()) {
    if (c.size() > best_len) {
      best_len = c.size();
      best = c[0];
    }
  }
  return best;
}

std::size_t StabilizerChain::insert(const Permutation& g) {
  auto [h, j] = sift(g);
  if (j == levels_.size()) {
    if (h.is_identity()) return std::numeric_limits<std::size_t>::max();
    add_level(choose_base_point(h));
  }
  add_strong(h, 0, j);
  return j;
}

void StabilizerChain::complete() {
  std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
  while (i >= 0) {
    bool added = false;
    for (std::size_t oi = 0; oi < levels_[static_cast<std::size_t>(i)].orbit.size() && !added; ++oi) {
      for (std::size_t gi = 0; gi < levels_[static_cast<std::size_t>(i)].gens.size(); ++gi) {
        Level& lv = levels_[static_cast<std::size_t>(i)];
        auto& mark = lv.tested[gi];
        if (mark.size() < lv.orbit.size()) mark.resize(lv.orbit.size(), 0);
        if (mark[oi]) continue;
        mark[oi] = 1;
        const Permutation& s = lv.gens[gi];
        Point img = s[lv.orbit[oi]];
        Permutation schreier = lv.reps[oi] * s;
        schreier *= lv.inv_rep(img);
        auto [h, j] = sift(std::move(schreier), static_cast<std::size_t>(i) + 1);
        if (j == levels_.size() && h.is_identity()) continue;
        if (j == levels_.size()) add_level(choose_base_point(h));
        add_strong(h, static_cast<std::size_t>(i) + 1, j);
        i = static_cast<std::ptrdiff_t>(j);
        added = true;
        break;
      }
    }
    if (!added) --i;
  }
}

StabilizerChain StabilizerChain::build(const GeneratedGroup& g, const ChainOptions& opt) {
  if (g.degree > opt.max_degree)
    throw ResourceError("degree " + std::to_string(g.degree) + " exceeds chain limit " +
                        std::to_string(opt.max_degree));
  StabilizerChain c(g.degree);
  std::vector<char> used(g.degree, 0);
  for (Point b : opt.base_hint) {
    if (b >= g.degree) throw InputError("base hint point exceeds degree");
    if (used[b]) continue;
    used[b] = 1;
    c.add_level(b);
  }
  for (const auto& x : g.generators)
    if (!x.is_identity()) c.insert(x);

  if (opt.known_order && c.order() == *opt.known_order) return c;
  if (opt.random_prepass && !c.levels_.empty()) {
    RandomElements rnd(g.generators, g.degree, opt.seed);
    int quiet = 0;
    for (int iter = 0; iter < 100000 && quiet < 24; ++iter) {
      if (c.insert(rnd.next()) == std::numeric_limits<std::size_t>::max())
        ++quiet;
      else
        quiet = 0;
      if (opt.known_order && c.order() == *opt.known_order) return c;
    }
  }
  c.complete();
  if (opt.known_order && c.order() != *opt.known_order)
    throw InputError("group order " + c.order().get_str() + " differs from stated order " +
                     opt.known_order->get_str());
  return c;
}

void StabilizerChain::extend(const Permutation& g) {
  if (g.degree() != degree_) throw InputError("degree mismatch extending chain");
  if (insert(g) == std::numeric_limits<std::size_t>::max()) return;
  complete();
}

PermGroup::PermGroup(GeneratedGroup g, const ChainOptions& opt)
    : gens_(std::move(g)),
      chain_(std::make_shared<const StabilizerChain>(StabilizerChain::build(gens_, opt))) {}

PermGroup::PermGroup(GeneratedGroup g, std::shared_ptr<const StabilizerChain> chain)
    : gens_(std::move(g)), chain_(std::move(chain)) {
  if (!chain_) chain_ = std::make_shared<const StabilizerChain>(StabilizerChain::build(gens_));
}

}  // namespace permres
