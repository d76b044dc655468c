#pragma once

// Base sizes, distinguishing numbers, stabilizer scans and regular tuple counts.

#include <optional>
#include <string>
#include <vector>

#include "permres/bigint.hpp"
#include "permres/budget.hpp"
#include "permres/group.hpp"
#include "permres/structure.hpp"

namespace permres {

struct BaseWitness {
  std::vector<Point> points;  // a base, when one was found
  std::size_t size = 0;       // points.size()
  bool minimal = false;       // every smaller size was searched exhaustively
  bool exceeds_max = false;   // no base of size <= max_b
  bool complete = true;       // false when the budget ran out
  std::size_t lower_bound = 0;
};

bool is_base(const PermGroup& g, std::span<const Point> points);
std::size_t base_lower_bound(const PermGroup& g);  // ceil(log |G| / log n)
BaseWitness greedy_base(const PermGroup& g);
// Iterative deepening from the lower bound. With threads > 1 the top-level
// branches run concurrently; the witness is the one from the first branch in
// point order, so results do not depend on the thread count.
BaseWitness base_size_exact(const PermGroup& g, std::size_t max_b, Budget& budget = unlimited_budget(),
                            unsigned threads = 1);

struct Coloring {
  std::size_t colors = 0;
  std::vector<unsigned> color;  // per point
};

// Subgroup of g preserving every color class, as an intersection of setwise stabilizers.
PermGroup coloring_stabilizer(const PermGroup& g, const Coloring& c, Budget& budget = unlimited_budget());

struct DistinguishingResult {
  std::size_t number = 0;
  Coloring witness;
};

DistinguishingResult distinguishing_number(const PermGroup& g, std::size_t max_degree = 64,
                                           Budget& budget = unlimited_budget());

struct ScanPredicate {
  enum class Kind { kSolvable, kGamma } kind = Kind::kSolvable;
  std::size_t d = 0;  // kGamma
  std::string name() const;
};
ScanPredicate parse_scan_predicate(const std::string& s);  // "solvable" or "gamma:d"

struct ScanClass {
  std::vector<Point> tuple;
  BigInt order;
  std::string structure;
  Tri verdict = Tri::kYes;
};

struct ScanReport {
  std::size_t c = 0;
  ScanPredicate predicate;
  Tri verdict = Tri::kYes;  // yes = all pass, no = some representative fails
  bool exhaustive = true;
  std::vector<ScanClass> classes;  // one per orbit representative, in visiting order
  std::size_t worst = 0;           // index of a class of largest stabilizer order
};

ScanReport stabilizer_scan(const PermGroup& g, std::size_t c, const ScanPredicate& pred,
                           Budget& budget = unlimited_budget(), std::size_t max_reps = 100000);

struct RegularCount {
  BigInt count;              // exact count, or the partial sum when not exact
  bool threshold_reached = false;
  bool complete = true;      // false when the budget ran out
  std::optional<BigInt> regular_orbits;  // count / |L| when exact
};

// Number of t-tuples of points whose pointwise stabilizer in l is trivial.
// With a threshold the search stops as soon as the count reaches it.
RegularCount count_regular_tuples(const PermGroup& l, std::size_t t, const std::optional<BigInt>& threshold,
                                  Budget& budget = unlimited_budget());

}  // namespace permres
