#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "permres/classical.hpp"
#include "permres/errors.hpp"
#include "permres/fq.hpp"
#include "permres/group.hpp"

using namespace permres;

namespace {

// Schoolbook polynomial arithmetic over GF(p) modulo the field's modulus.
struct PolyOracle {
  unsigned p, k;
  std::vector<unsigned> mod;  // x^k = -sum mod[i] x^i

  std::vector<unsigned> digits(unsigned e) const {
    std::vector<unsigned> d(k);
    for (unsigned i = 0; i < k; ++i, e /= p) d[i] = e % p;
    return d;
  }
  unsigned encode(const std::vector<unsigned>& d) const {
    unsigned e = 0;
    for (unsigned i = k; i-- > 0;) e = e * p + d[i];
    return e;
  }
  unsigned add(unsigned a, unsigned b) const {
    auto x = digits(a), y = digits(b);
    for (unsigned i = 0; i < k; ++i) x[i] = (x[i] + y[i]) % p;
    return encode(x);
  }
  unsigned mul(unsigned a, unsigned b) const {
    auto x = digits(a), y = digits(b);
    std::vector<unsigned> r(2 * k, 0);
    for (unsigned i = 0; i < k; ++i)
      for (unsigned j = 0; j < k; ++j) r[i + j] = (r[i + j] + x[i] * y[j]) % p;
    for (unsigned d = 2 * k - 1; d >= k; --d) {
      unsigned c = r[d];
      r[d] = 0;
      for (unsigned i = 0; i < k; ++i) r[d - k + i] = (r[d - k + i] + (p - mod[i]) % p * c) % p;
    }
    r.resize(k);
    return encode(r);
  }
};

std::size_t ipow_sz(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

// Counts matrices over GF(form field) preserving the form, optionally with det 1.
std::size_t brute_isometries(const FormSpec& form, bool det_one) {
  std::size_t d = form.dim;
  unsigned q = form.field->q();
  std::size_t total = ipow_sz(q, d * d), count = 0;
  FqMatrix g(form.field, d, d);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t t = idx;
    for (std::size_t i = 0; i < d * d; ++i, t /= q) g.at(i / d, i % d) = static_cast<FqField::Elem>(t % q);
    if (!form.preserved_by(g)) continue;
    if (det_one && g.determinant() != 1) continue;
    ++count;
  }
  return count;
}

BigInt vector_action_order(const ClassicalGroup& cg) {
  unsigned q = cg.form.field->q();
  std::size_t total = ipow_sz(q, cg.form.dim);
  std::vector<Permutation> gens;
  for (const auto& g : cg.gens) {
    std::vector<Point> img(total);
    for (std::size_t i = 0; i < total; ++i)
      img[i] = static_cast<Point>(vector_index(vec_mat(vector_from_index(i, cg.form.dim, q), g), q));
    gens.emplace_back(std::move(img));
  }
  return PermGroup(GeneratedGroup(total, gens)).order();
}

FqMatrix random_matrix(const FieldPtr& f, std::size_t r, std::size_t c, std::mt19937_64& rng) {
  FqMatrix m(f, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = static_cast<FqField::Elem>(rng() % f->q());
  return m;
}

}  // namespace

TEST_CASE("field tables agree with polynomial arithmetic") {
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 25u, 27u, 32u, 49u, 64u}) {
    auto f = FqField::get(q);
    PolyOracle o{f->p(), f->k(), f->modulus()};
    for (unsigned a = 0; a < q; ++a)
      for (unsigned b = 0; b < q; ++b) {
        auto ea = static_cast<FqField::Elem>(a), eb = static_cast<FqField::Elem>(b);
        REQUIRE(f->add(ea, eb) == o.add(a, b));
        REQUIRE(f->mul(ea, eb) == o.mul(a, b));
      }
    // the generator x has multiplicative order q - 1, so the modulus is primitive
    unsigned x = q == f->p() ? f->primitive_element() : f->p();
    unsigned y = x, ord = 1;
    while (y != 1) {
      y = o.mul(y, x);
      ++ord;
    }
    CHECK(ord == q - 1);
    CHECK(f->element_order(f->primitive_element()) == q - 1);
    for (unsigned a = 1; a < q; ++a) CHECK(f->mul(static_cast<FqField::Elem>(a), f->inv(static_cast<FqField::Elem>(a))) == 1);
  }
}

TEST_CASE("small field facts") {
  CHECK(FqField::get(8)->element_order(FqField::get(8)->primitive_element()) == 7);
  CHECK(FqField::get(7)->from_int(-1) == 6);
  CHECK(FqField::get(9)->from_int(5) == 2);
  unsigned p = 0, k = 0;
  CHECK(is_prime_power(343, &p, &k));
  CHECK((p == 7 && k == 3));
  CHECK_FALSE(is_prime_power(12));
  CHECK_FALSE(is_prime_power(1));
  CHECK_THROWS_AS(FqField::get(6), InputError);
  CHECK_THROWS_AS(FqField::get(1024), InputError);
}

TEST_CASE("matrix algebra over small fields") {
  std::mt19937_64 rng(5);
  for (unsigned q : {2u, 3u, 4u, 5u, 9u}) {
    auto f = FqField::get(q);
    for (int trial = 0; trial < 40; ++trial) {
      std::size_t n = 1 + rng() % 4;
      FqMatrix a = random_matrix(f, n, n, rng), b = random_matrix(f, n, n, rng);
      CHECK(f->mul(a.determinant(), b.determinant()) == (a * b).determinant());
      auto inv = a.inverse();
      CHECK(inv.has_value() == (a.determinant() != 0));
      if (inv) CHECK(a * *inv == FqMatrix::identity(f, n));
      // rank against the size of the row space
      std::set<std::size_t> span;
      for (std::size_t c = 0; c < ipow_sz(q, n); ++c) {
        FqVector coeff = vector_from_index(c, n, q);
        span.insert(vector_index(vec_mat(coeff, a), q));
      }
      CHECK(span.size() == ipow_sz(q, a.rank()));
      FqMatrix ns = a.left_nullspace();
      CHECK(ns.rows() == n - a.rank());
      if (ns.rows()) CHECK((ns * a).is_zero());
    }
  }
}

TEST_CASE("vector indices round-trip") {
  for (std::size_t i = 0; i < 81; ++i) CHECK(vector_index(vector_from_index(i, 4, 3), 3) == i);
  CHECK(vector_from_index(5, 3, 2) == FqVector{1, 0, 1});
}

TEST_CASE("subspace canonical form") {
  auto f = FqField::get(3);
  auto u = SubspaceFq::span(f, {{1, 1, 0}, {0, 1, 1}}, 3);
  auto v = SubspaceFq::span(f, {{1, 0, 2}, {1, 2, 1}, {2, 2, 0}}, 3);
  CHECK(u.dim() == 2);
  CHECK(u == v);
  CHECK(u.contains({1, 2, 1}));
  CHECK_FALSE(u.contains({1, 0, 0}));
  CHECK_THROWS_AS(SubspaceFq::span(f, {{0, 0, 0}}, 3), InputError);
  // 2-subspaces of GF(2)^4: (2^4-1)(2^4-2)/((2^2-1)(2^2-2)) = 35
  auto f2 = FqField::get(2);
  std::set<std::vector<FqField::Elem>> keys;
  for (std::size_t a = 1; a < 16; ++a)
    for (std::size_t b = 1; b < 16; ++b) {
      if (a == b) continue;
      keys.insert(SubspaceFq::span(f2, {vector_from_index(a, 4, 2), vector_from_index(b, 4, 2)}, 4).key());
    }
  CHECK(keys.size() == 35);
}

TEST_CASE("order formulas") {
  CHECK(classical_order(Family::kSL, 2, 3) == 24);
  CHECK(classical_order(Family::kSL, 4, 2) == 20160);
  CHECK(classical_order(Family::kSp, 6, 2) == 1451520);
  CHECK(classical_order(Family::kSp, 4, 3) == 51840);
  CHECK(classical_order(Family::kSU, 4, 2) == 25920);
  CHECK(classical_order(Family::kGOPlus, 6, 2) == 40320);
  CHECK(classical_order(Family::kGOMinus, 6, 2) == 51840);
  CHECK(classical_order(Family::kGOOdd, 7, 2) == 1451520);
  CHECK(classical_order(Family::kGOOdd, 3, 3) == 48);
}

TEST_CASE("brute-force isometry counts match the order formulas") {
  struct Case {
    Family fam;
    FormKind kind;
    unsigned m, q;
    bool det_one;
  };
  for (Case c : {Case{Family::kSL, FormKind::kNone, 3, 2, true}, Case{Family::kSL, FormKind::kNone, 2, 3, true},
                 Case{Family::kSp, FormKind::kSymplectic, 4, 2, false},
                 Case{Family::kGOPlus, FormKind::kQuadraticPlus, 4, 2, false},
                 Case{Family::kGOMinus, FormKind::kQuadraticMinus, 4, 2, false},
                 Case{Family::kGOMinus, FormKind::kQuadraticMinus, 2, 3, false},
                 Case{Family::kGOOdd, FormKind::kQuadraticOdd, 3, 3, false},
                 Case{Family::kGOOdd, FormKind::kQuadraticOdd, 3, 2, false},
                 Case{Family::kSU, FormKind::kHermitian, 2, 2, true},
                 Case{Family::kSU, FormKind::kHermitian, 3, 2, true}}) {
    CAPTURE(to_string(c.fam));
    CAPTURE(c.m);
    CAPTURE(c.q);
    FormSpec form = standard_form(c.kind, c.m, c.q);
    CHECK(BigInt(static_cast<unsigned long>(brute_isometries(form, c.det_one))) == classical_order(c.fam, c.m, c.q));
  }
}

TEST_CASE("classical generators generate groups of the right order") {
  struct Case {
    Family fam;
    unsigned m, q;
  };
  for (Case c : {Case{Family::kSL, 2, 3}, Case{Family::kSL, 3, 2}, Case{Family::kSL, 2, 4}, Case{Family::kSL, 4, 2},
                 Case{Family::kSL, 3, 3}, Case{Family::kSp, 4, 2}, Case{Family::kSp, 4, 3}, Case{Family::kSp, 6, 2},
                 Case{Family::kSp, 2, 4}, Case{Family::kSU, 2, 2}, Case{Family::kSU, 3, 2}, Case{Family::kSU, 4, 2},
                 Case{Family::kSU, 2, 3}, Case{Family::kGOPlus, 4, 2}, Case{Family::kGOPlus, 6, 2},
                 Case{Family::kGOMinus, 4, 2}, Case{Family::kGOMinus, 6, 2}, Case{Family::kGOPlus, 4, 3},
                 Case{Family::kGOMinus, 4, 3}, Case{Family::kGOOdd, 3, 3}, Case{Family::kGOOdd, 5, 2},
                 Case{Family::kGOOdd, 7, 2}, Case{Family::kGOOdd, 5, 3}}) {
    ClassicalGroup cg = classical_group(c.fam, c.m, c.q);
    CAPTURE(cg.name);
    for (const auto& g : cg.gens) {
      CHECK(cg.form.preserved_by(g));
      if (c.fam == Family::kSL || c.fam == Family::kSp || c.fam == Family::kSU) CHECK(g.determinant() == 1);
    }
    CHECK(vector_action_order(cg) == cg.order);
  }
}

TEST_CASE("classical group input errors") {
  CHECK_THROWS_AS(classical_group(Family::kSp, 5, 2), InputError);
  CHECK_THROWS_AS(classical_group(Family::kSL, 3, 6), InputError);
  CHECK_THROWS_AS(classical_group(Family::kGOOdd, 4, 3), InputError);
  CHECK_THROWS_AS(parse_family("GL"), InputError);
  CHECK(parse_family("GO-") == Family::kGOMinus);
}

TEST_CASE("subspace types agree with singular-vector counts") {
  // A nondegenerate 2l-space of sign e has (q^l - e)(q^(l-1) + e) nonzero singular vectors.
  for (auto [kind, q] : {std::pair{FormKind::kQuadraticPlus, 2u}, std::pair{FormKind::kQuadraticMinus, 2u},
                         std::pair{FormKind::kQuadraticPlus, 3u}, std::pair{FormKind::kQuadraticOdd, 3u}}) {
    std::size_t d = kind == FormKind::kQuadraticOdd ? 5 : 4;
    FormSpec form = standard_form(kind, d, q);
    auto f = form.field;
    std::map<std::vector<FqField::Elem>, SubspaceFq> subspaces;
    std::size_t total = ipow_sz(q, d);
    for (std::size_t a = 1; a < total; ++a)
      for (std::size_t b = a + 1; b < total; ++b) {
        auto u = SubspaceFq::span(f, {vector_from_index(a, d, q), vector_from_index(b, d, q)}, d);
        if (u.dim() == 2) subspaces.emplace(u.key(), u);
      }
    std::size_t plus = 0, minus = 0, sing = 0;
    for (const auto& [key, u] : subspaces) {
      SubspaceClass c = subspace_type(form, u);
      std::size_t singular = 0;
      bool all_singular = true;
      for (std::size_t i = 1; i < q * q; ++i) {
        FqVector v = vec_mat(vector_from_index(i, 2, q), u.basis());
        bool s = form.quadratic(v) == 0;
        singular += s;
        all_singular = all_singular && s;
      }
      CHECK(c.totally_singular == all_singular);
      sing += all_singular;
      if (!c.nondegenerate) continue;
      if (c.sign == 1) {
        ++plus;
        CHECK(singular == 2 * (q - 1));
      } else {
        ++minus;
        CHECK(c.sign == -1);
        CHECK(singular == 0);
      }
    }
    CHECK(plus > 0);
    CHECK(minus > 0);
    if (kind != FormKind::kQuadraticMinus) CHECK(sing > 0);
  }
  // whole spaces
  for (unsigned q : {2u, 3u}) {
    for (std::size_t d : {2u, 4u, 6u}) {
      FormSpec fp = standard_form(FormKind::kQuadraticPlus, d, q);
      FormSpec fm = standard_form(FormKind::kQuadraticMinus, d, q);
      auto whole = SubspaceFq::span(FqMatrix::identity(fp.field, d));
      CHECK(subspace_type(fp, whole).sign == 1);
      CHECK(subspace_type(fm, whole).sign == -1);
      CHECK(subspace_type(fm, whole).witt_index == d / 2 - 1);
    }
  }
}

TEST_CASE("symplectic and hermitian subspace types") {
  FormSpec sp = standard_form(FormKind::kSymplectic, 4, 3);
  auto f = sp.field;
  CHECK(subspace_type(sp, SubspaceFq::span(f, {{1, 0, 0, 0}, {0, 0, 1, 0}}, 4)).nondegenerate);
  auto iso = subspace_type(sp, SubspaceFq::span(f, {{1, 0, 0, 0}, {0, 1, 0, 0}}, 4));
  CHECK(iso.totally_isotropic);
  CHECK_FALSE(iso.nondegenerate);
  FormSpec h = standard_form(FormKind::kHermitian, 3, 2);
  auto hf = h.field;
  CHECK(subspace_type(h, SubspaceFq::span(hf, {{0, 0, 1}}, 3)).nondegenerate);
  CHECK(subspace_type(h, SubspaceFq::span(hf, {{1, 0, 0}}, 3)).totally_isotropic);
  // hermitian: h(v,v) lies in GF(q) for all v
  FqField::Elem a = hf->primitive_element();
  FqVector v{a, 1, a};
  auto hv = h.bilinear(v, v);
  CHECK(h.conj(hv) == hv);
}
