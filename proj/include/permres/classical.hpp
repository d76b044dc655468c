#pragma once

#include <string>
#include <vector>

#include "permres/bigint.hpp"
#include "permres/fq.hpp"

namespace permres {

enum class FormKind { kNone, kSymplectic, kQuadraticPlus, kQuadraticMinus, kQuadraticOdd, kHermitian };
const char* to_string(FormKind k);

// Standard bases: e_1..e_l, f_1..f_l, then the extra vectors. For minus type the
// last pair is x, y with Q(x) = 1, Q(y) = xi, B(x,y) = 1 and t^2 + t + xi
// irreducible; odd dimension appends v with Q(v) = 1 (a radical vector of the
// polar form when q is even). Hermitian forms live over GF(q^2).
struct FormSpec {
  FormKind kind = FormKind::kNone;
  FieldPtr field;
  std::size_t dim = 0;
  FqMatrix gram;          // polar / alternating / hermitian Gram matrix
  FqVector qdiag;         // Q on the basis vectors (quadratic kinds)
  unsigned conj_power = 0;  // hermitian: conjugation a -> a^(p^conj_power)

  bool quadratic() const {
    return kind == FormKind::kQuadraticPlus || kind == FormKind::kQuadraticMinus ||
           kind == FormKind::kQuadraticOdd;
  }
  FqField::Elem conj(FqField::Elem a) const;
  FqField::Elem bilinear(const FqVector& x, const FqVector& y) const;
  FqField::Elem quadratic(const FqVector& x) const;
  // B(x,x) for alternating/hermitian, Q(x) for quadratic kinds
  bool isotropic(const FqVector& x) const;
  bool preserved_by(const FqMatrix& g) const;
};

FormSpec standard_form(FormKind kind, std::size_t dim, unsigned q);

struct SubspaceClass {
  std::size_t dim = 0;
  bool nondegenerate = false;
  bool totally_isotropic = false;
  bool totally_singular = false;  // quadratic kinds only
  int sign = 0;                   // +1 plus type, -1 minus type, 0 not applicable
  std::size_t witt_index = 0;     // quadratic nondegenerate subspaces
};

SubspaceClass subspace_type(const FormSpec& form, const SubspaceFq& u);

enum class Family { kSL, kSp, kSU, kGOPlus, kGOMinus, kGOOdd };
Family parse_family(const std::string& s);
std::string to_string(Family f);

struct ClassicalGroup {
  Family family;
  unsigned m = 0;
  unsigned q = 0;
  FormSpec form;  // kind kNone for SL
  std::vector<FqMatrix> gens;
  BigInt order;   // from the order formula
  std::string name;
};

BigInt classical_order(Family family, unsigned m, unsigned q);

// Generators for SL_m(q), Sp_m(q), SU_m(q) or the full isometry group GO of a
// quadratic form. SL and Sp use root elements; SU and GO are grown from
// transvections/reflections until the order of the vector action matches the
// formula, so they need q^m <= 65536 (q^(2m) for SU).
ClassicalGroup classical_group(Family family, unsigned m, unsigned q);

}  // namespace permres
