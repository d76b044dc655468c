#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <unordered_map>
#include <span>
#include <vector>

#include "permres/budget.hpp"
#include "permres/group.hpp"

namespace permres {

using PointSet = std::vector<Point>;
using BlockSystem = std::vector<PointSet>;  // blocks sorted by least point

PointSet orbit(const std::vector<Permutation>& gens, std::size_t degree, Point a);
std::vector<PointSet> orbits(const std::vector<Permutation>& gens, std::size_t degree);
std::vector<PointSet> orbits(const PermGroup& g);
bool is_transitive(const PermGroup& g);

// Finest G-invariant partition in which a and b share a block.
BlockSystem finest_block_system(const PermGroup& g, Point a, Point b);
// Distinct minimal nontrivial block systems; throws InputError if g is intransitive.
std::vector<BlockSystem> minimal_block_systems(const PermGroup& g);
bool is_primitive(const PermGroup& g);

// Chain of g whose base starts with prefix (trivial levels are kept).
std::shared_ptr<const StabilizerChain> chain_with_prefix(const PermGroup& g,
                                                         std::span<const Point> prefix);
// Group of the pointwise stabilizer of base[0..i-1] read off a chain.
PermGroup chain_subgroup(std::shared_ptr<const StabilizerChain> chain, std::size_t i);

PermGroup point_stabilizer(const PermGroup& g, Point a);
PermGroup pointwise_stabilizer(const PermGroup& g, std::span<const Point> points);
PermGroup setwise_stabilizer(const PermGroup& g, std::span<const Point> set,
                             Budget& budget = unlimited_budget());

// Test on one base point and its candidate image; must accept (b, b).
using ImageTest = std::function<bool(Point base_point, Point image)>;
using ElementTest = std::function<bool(const Permutation&)>;

// Backtrack over the chain of g (base starting with prefix) for the subgroup
// {x in g : image_ok on every base point and element_ok(x)}. The two tests must
// describe a subgroup; known generators must lie in it.
PermGroup subgroup_search(const PermGroup& g, std::span<const Point> prefix,
                          const ImageTest& image_ok, const ElementTest& element_ok,
                          const std::vector<Permutation>& known, Budget& budget);

// Some non-identity x in the chain's group passing both tests, if any.
std::optional<Permutation> find_nontrivial(const StabilizerChain& chain, const ImageTest& image_ok,
                                           const ElementTest& element_ok, Budget& budget);

// Smallest normal subgroup of g containing xs. With stop_at set, returns g
// itself as soon as the closure reaches that order.
PermGroup normal_closure(const PermGroup& g, const std::vector<Permutation>& xs,
                         const BigInt* stop_at = nullptr);
// A few uniformly random elements generating the same group.
PermGroup with_few_generators(const PermGroup& g, std::uint64_t seed = 1);
PermGroup subgroup(std::size_t degree, const std::vector<Permutation>& gens,
                   const ChainOptions& opt = {});

// One representative per orbit of g on ordered c-tuples of distinct points,
// visited as a nested orbit tree together with the tuple's pointwise stabilizer.
using TupleVisitor = std::function<void(const std::vector<Point>& tuple, const PermGroup& stab)>;
std::size_t for_each_tuple_rep(const PermGroup& g, std::size_t c, const TupleVisitor& visit,
                               std::size_t max_reps = 1000000, Budget& budget = unlimited_budget());

}  // namespace permres

namespace permres {

// Right cosets Hx of a subgroup H <= G. A coset is labelled by the least image
// of G's base under its elements, found level by level with H's transversals
// (H's chain is built on G's base so the label determines the coset).
class CosetSpace {
 public:
  CosetSpace(const PermGroup& g, const PermGroup& h, std::size_t max_index = 100000,
             Budget& budget = unlimited_budget());

  std::size_t size() const { return reps_.size(); }
  std::vector<Point> label(const Permutation& x) const;
  std::size_t index_of(const Permutation& x) const;  // throws if x is not in G
  const Permutation& representative(std::size_t i) const { return reps_[i]; }
  const std::vector<Permutation>& generator_images() const { return gen_images_; }
  // Permutation of the cosets induced by right multiplication with x in G.
  Permutation act(const Permutation& x) const;

 private:
  struct LabelHash {
    std::size_t operator()(const std::vector<Point>& v) const;
  };
  std::shared_ptr<const StabilizerChain> h_chain_;
  std::vector<Permutation> reps_;
  std::vector<Permutation> gen_images_;
  std::unordered_map<std::vector<Point>, std::size_t, LabelHash> index_;
};

}  // namespace permres
