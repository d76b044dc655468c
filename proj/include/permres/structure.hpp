#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "permres/bigint.hpp"
#include "permres/budget.hpp"
#include "permres/group.hpp"

namespace permres {

enum class Tri { kNo, kYes, kUnknown };
const char* to_string(Tri t);

enum class FactorKind { kCyclic, kAlternating, kIdentified, kUnknown };
const char* to_string(FactorKind k);

// One composition factor. The largest alternating section is carried as an
// interval [alt_lower, alt_upper]; 4 means "no A_m section with m >= 5".
struct FactorDescriptor {
  FactorKind kind = FactorKind::kUnknown;
  BigInt order;
  std::string name;        // "C3", "A7", "Sp6(2)", or candidate names for unknown
  unsigned degree_param = 0;  // p for cyclic, m for alternating
  unsigned alt_lower = 4;
  unsigned alt_upper = 4;
  bool simple_known = true;  // false when a perfect piece could not be split or named

  bool alt_exact() const { return alt_lower == alt_upper; }
};

struct SimpleGroupEntry {
  BigInt order;
  std::string name;
  std::optional<unsigned> max_alt_section;
  std::string disambiguator;
};

// The shipped table of simple groups of Lie type (order <= 1e10).
const std::vector<SimpleGroupEntry>& simple_group_table();
std::vector<const SimpleGroupEntry*> table_lookup(const BigInt& order);

// Largest m for which A_m can possibly be a section of a nonabelian simple group
// of the given order that is not itself alternating: A_m must be a quotient of a
// proper subgroup L, so |A_m| divides |L| and T acts faithfully on the cosets of L.
unsigned alt_section_upper_bound_simple(const BigInt& order);
// Same question for an arbitrary group: only divisibility is available.
unsigned alt_section_upper_bound_any(const BigInt& order);

FactorDescriptor cyclic_factor(const BigInt& p);
FactorDescriptor alternating_factor(unsigned m);

// Names a nonabelian simple group from its order; sample_order draws element
// orders of the group and is used for |A8| = |L3(4)|.
FactorDescriptor identify_simple(const BigInt& order,
                                 const std::function<BigInt()>& sample_order);

PermGroup derived_subgroup(const PermGroup& g);
std::vector<PermGroup> derived_series(const PermGroup& g);
bool is_solvable(const PermGroup& g);

struct CompositionOptions {
  BigInt max_order = BigInt("1000000000000");
  std::uint64_t seed = 0xc0ffeeULL;
  int normal_probe_samples = 24;
  int spectrum_samples = 600;
  std::size_t max_quotient_degree = 200000;
};

std::vector<FactorDescriptor> composition_factors(const PermGroup& g,
                                                  const CompositionOptions& opt = {},
                                                  Budget& budget = unlimited_budget());
std::string factors_summary(const std::vector<FactorDescriptor>& f);

struct GammaAnswer {
  Tri value = Tri::kUnknown;
  std::string reason;
};

// Membership in the class of groups with no section isomorphic to A_d, d >= 5.
// Decided factor by factor: the class is closed under subgroups, quotients and
// extensions, so a group belongs iff all its composition factors do.
GammaAnswer in_gamma(const std::vector<FactorDescriptor>& factors, unsigned d);
GammaAnswer in_gamma(const PermGroup& g, unsigned d, Budget& budget = unlimited_budget());

// Least d >= 5 for which in_gamma is certainly yes, and the least d for which
// it is not certainly no; equal when every factor is resolved exactly.
struct GammaProfile {
  unsigned min_verified_d = 5;
  unsigned min_possible_d = 5;
};
GammaProfile gamma_profile(const std::vector<FactorDescriptor>& factors);

// Restriction of a group to one of its orbits, and the kernel of that action.
PermGroup orbit_action(const PermGroup& g, const std::vector<Point>& orbit_points,
                       std::optional<BigInt> image_order = std::nullopt);
PermGroup block_action(const PermGroup& g, const std::vector<std::vector<Point>>& blocks,
                       std::optional<BigInt> image_order = std::nullopt);
PermGroup block_kernel(const PermGroup& g, const std::vector<std::vector<Point>>& blocks);

}  // namespace permres
