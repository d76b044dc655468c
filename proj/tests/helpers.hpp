#pragma once

// Brute-force oracles shared by the unit tests. They enumerate elements or
// subsets directly and never touch stabilizer chains.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "permres/bigint.hpp"
#include "permres/group.hpp"
#include "permres/permutation.hpp"

namespace testing_support {

using permres::Permutation;
using permres::Point;
using permres::BigInt;
using permres::GeneratedGroup;
using permres::PermGroup;

inline Permutation perm(const std::string& s, std::size_t n) {
  return permres::parse_permutation(s, n);
}

inline permres::GeneratedGroup gg(std::size_t n, std::initializer_list<const char*> gens) {
  std::vector<Permutation> v;
  for (const char* g : gens) v.push_back(perm(g, n));
  return permres::GeneratedGroup(n, v);
}

inline permres::PermGroup pg(std::size_t n, std::initializer_list<const char*> gens) {
  return permres::PermGroup(gg(n, gens));
}

// Closure of the generators under right multiplication.
inline std::vector<Permutation> enumerate_elements(const std::vector<Permutation>& gens,
                                                   std::size_t n) {
  std::unordered_set<Permutation, permres::PermutationHash> seen;
  std::vector<Permutation> out{Permutation(n)};
  seen.insert(out[0]);
  for (std::size_t i = 0; i < out.size(); ++i)
    for (const auto& g : gens) {
      Permutation y = out[i] * g;
      if (seen.insert(y).second) out.push_back(y);
    }
  return out;
}

inline Permutation random_perm(std::size_t n, std::mt19937_64& rng) {
  std::vector<Point> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = Point(i);
  std::shuffle(img.begin(), img.end(), rng);
  return Permutation(img);
}

// Random permutation with small support, so random groups are not always giants.
inline Permutation random_sparse_perm(std::size_t n, std::mt19937_64& rng) {
  std::vector<Point> pts(n);
  for (std::size_t i = 0; i < n; ++i) pts[i] = Point(i);
  std::shuffle(pts.begin(), pts.end(), rng);
  std::size_t k = 2 + rng() % std::min<std::size_t>(n - 1, 4);
  std::vector<std::vector<Point>> cyc{std::vector<Point>(pts.begin(), pts.begin() + k)};
  return Permutation::from_cycles(n, cyc);
}

inline std::vector<Permutation> all_perms(std::size_t n) {
  std::vector<Point> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = Point(i);
  std::vector<Permutation> out;
  do out.emplace_back(img);
  while (std::next_permutation(img.begin(), img.end()));
  return out;
}

// Oracle: a set B containing point 0 is a block iff its images under the group
// are pairwise equal or disjoint. Images are closed under generators.
inline std::vector<std::set<Point>> brute_minimal_blocks(const PermGroup& g) {
  std::size_t n = g.degree();
  std::vector<std::set<Point>> blocks;
  for (unsigned mask = 0; mask < (1u << (n - 1)); ++mask) {
    std::set<Point> b{0};
    for (std::size_t i = 1; i < n; ++i)
      if (mask >> (i - 1) & 1u) b.insert(Point(i));
    if (b.size() <= 1 || b.size() >= n || n % b.size()) continue;
    std::vector<std::set<Point>> imgs{b};
    std::set<std::set<Point>> seen{b};
    bool ok = true;
    for (std::size_t i = 0; i < imgs.size() && ok; ++i)
      for (const auto& s : g.generators()) {
        std::set<Point> y;
        for (Point x : imgs[i]) y.insert(s[x]);
        if (seen.insert(y).second) imgs.push_back(y);
      }
    for (std::size_t i = 0; i < imgs.size() && ok; ++i)
      for (std::size_t j = i + 1; j < imgs.size() && ok; ++j)
        for (Point x : imgs[i])
          if (imgs[j].count(x)) {
            ok = false;
            break;
          }
    if (ok) blocks.push_back(b);
  }
  std::vector<std::set<Point>> minimal;
  for (const auto& b : blocks) {
    bool is_min = true;
    for (const auto& c : blocks)
      if (c.size() < b.size() && std::includes(b.begin(), b.end(), c.begin(), c.end())) is_min = false;
    if (is_min) minimal.push_back(b);
  }
  return minimal;
}

// Random groups of degree <= 10 and order <= 5040, with their element lists.
struct SmallGroup {
  PermGroup g;
  std::vector<Permutation> elements;
};

inline std::vector<SmallGroup> small_corpus(std::uint64_t seed, int count, std::size_t max_degree) {
  std::mt19937_64 rng(seed);
  std::vector<SmallGroup> out;
  while (static_cast<int>(out.size()) < count) {
    std::size_t n = 3 + rng() % (max_degree - 2);
    std::vector<Permutation> gens;
    for (std::size_t i = 0, k = 1 + rng() % 3; i < k; ++i) gens.push_back(random_sparse_perm(n, rng));
    PermGroup g(GeneratedGroup(n, gens));
    if (g.order() > 5040) continue;
    out.push_back({g, enumerate_elements(gens, n)});
  }
  return out;
}

inline bool fixes_all(const Permutation& p, std::size_t mask) {
  for (std::size_t x = 0; x < p.degree(); ++x)
    if ((mask >> x & 1) && p[static_cast<Point>(x)] != x) return false;
  return true;
}

inline std::size_t brute_base_size(const SmallGroup& s) {
  std::size_t n = s.g.degree(), best = n;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::size_t size = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (size >= best) continue;
    bool base = true;
    for (const auto& e : s.elements)
      if (!e.is_identity() && fixes_all(e, mask)) base = false;
    if (base) best = size;
  }
  return best;
}

inline std::vector<GeneratedGroup> random_groups(std::size_t max_degree, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<GeneratedGroup> out;
  for (int i = 0; i < count; ++i) {
    std::size_t n = 2 + rng() % (max_degree - 1);
    std::vector<Permutation> gens;
    int ngens = 1 + static_cast<int>(rng() % 3);
    for (int j = 0; j < ngens; ++j)
      gens.push_back(rng() % 3 ? random_sparse_perm(n, rng) : random_perm(n, rng));
    out.emplace_back(n, gens);
  }
  return out;
}

// Counts t-tuples (repeats allowed) whose pointwise stabilizer is trivial.
inline BigInt brute_regular_tuples(const SmallGroup& s, std::size_t t) {
  std::size_t n = s.g.degree(), total = 1;
  for (std::size_t i = 0; i < t; ++i) total *= n;
  BigInt count = 0;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t mask = 0;
    for (std::size_t i = 0, c = code; i < t; ++i, c /= n) mask |= std::size_t{1} << (c % n);
    bool trivial = true;
    for (const auto& e : s.elements)
      if (!e.is_identity() && fixes_all(e, mask)) trivial = false;
    if (trivial) ++count;
  }
  return count;
}

}  // namespace testing_support
