#pragma once

// Permutation actions built from matrix groups, coset spaces, subsets,
// partitions, affine spaces, wreath products and diagonal-type groups.

#include <optional>
#include <string>
#include <vector>

#include "permres/bigint.hpp"
#include "permres/budget.hpp"
#include "permres/classical.hpp"
#include "permres/fq.hpp"
#include "permres/group.hpp"

namespace permres {

struct LabeledAction {
  PermGroup group;
  std::vector<std::string> labels;  // point i (0-based) -> object
  // Order of the abstract group that acts, when known; 0 otherwise.
  BigInt abstract_order = 0;

  std::size_t degree() const { return group.degree(); }
  // |abstract| / |image|, or 0 when the abstract order is unknown.
  BigInt kernel_order() const;
};

inline constexpr std::size_t kDefaultDegreeCap = 100000;

enum class ObjectKind { kVectors, kPoints, kSubspaces };
enum class SubspaceFilter { kAll, kTotallyIsotropic, kNondegenerate, kNonsingular };

ObjectKind parse_object_kind(const std::string& s);
SubspaceFilter parse_subspace_filter(const std::string& s);

struct MatrixActionSpec {
  ObjectKind kind = ObjectKind::kVectors;
  std::size_t subspace_dim = 1;           // kSubspaces only
  SubspaceFilter filter = SubspaceFilter::kAll;
  int sign = 0;                           // nondegenerate filter on quadratic forms: +1, -1 or 0 (any)
  std::optional<std::vector<FqVector>> seed;  // spanning rows; first object passing the filter otherwise
  std::size_t cap = kDefaultDegreeCap;
};

// Orbit of the seed object under the matrix group. "Totally isotropic" means
// totally singular for quadratic forms; "nonsingular" means Q(v) != 0, or
// B(v,v) != 0 for forms without a quadratic part.
LabeledAction matrix_orbit_action(const std::vector<FqMatrix>& gens, const FormSpec& form,
                                  const MatrixActionSpec& spec, Budget& budget = unlimited_budget());
bool passes_filter(const FormSpec& form, const SubspaceFq& u, SubspaceFilter filter, int sign);

// Right multiplication on the right cosets of H in G. H must lie in G.
LabeledAction coset_action(const PermGroup& g, const PermGroup& h, std::size_t cap = kDefaultDegreeCap,
                           Budget& budget = unlimited_budget());

// Generators of Sym(m) or Alt(m) on {0..m-1}.
std::vector<Permutation> symmetric_generators(std::size_t m, bool alt);

LabeledAction subsets_action(std::size_t m, std::size_t k, bool alt, std::size_t cap = kDefaultDegreeCap);
LabeledAction partitions_action(std::size_t m, std::size_t k, bool alt, std::size_t cap = kDefaultDegreeCap);

// V:H on the vectors of V = GF(q)^m, H generated by the given matrices.
LabeledAction affine_action(const std::vector<FqMatrix>& linear, const FieldPtr& field, std::size_t m,
                            const BigInt& linear_order = 0, std::size_t cap = kDefaultDegreeCap);

// L wr P with P of degree k: on k blocks of size |Delta| (imprimitive) or on Delta^k (product).
LabeledAction wreath_imprimitive(const PermGroup& l, const PermGroup& p, std::size_t cap = kDefaultDegreeCap);
LabeledAction wreath_product_action(const PermGroup& l, const PermGroup& p, std::size_t cap = kDefaultDegreeCap);

// T x T acting on the elements of T by t -> a^-1 t b, optionally with the swap
// t -> t^-1 and the automorphism t -> s^-1 t s induced by a permutation s
// normalizing T. Elements are numbered in increasing order of their image lists.
LabeledAction diagonal_type_group(const PermGroup& t, bool include_swap,
                                  const std::optional<Permutation>& outer, std::size_t cap = kDefaultDegreeCap);

}  // namespace permres
