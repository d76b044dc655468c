#include "permres/classical.hpp"

#include "permres/errors.hpp"
#include "permres/group.hpp"

namespace permres {

const char* to_string(FormKind k) {
  switch (k) {
    case FormKind::kNone: return "none";
    case FormKind::kSymplectic: return "symplectic";
    case FormKind::kQuadraticPlus: return "quadratic-plus";
    case FormKind::kQuadraticMinus: return "quadratic-minus";
    case FormKind::kQuadraticOdd: return "quadratic-odd";
    case FormKind::kHermitian: return "hermitian";
  }
  return "none";
}

FqField::Elem FormSpec::conj(FqField::Elem a) const {
  if (kind != FormKind::kHermitian) return a;
  unsigned long long e = 1;
  for (unsigned i = 0; i < conj_power; ++i) e *= field->p();
  return field->pow(a, e);
}

FqField::Elem FormSpec::bilinear(const FqVector& x, const FqVector& y) const {
  const FqField& f = *field;
  FqField::Elem s = 0;
  for (std::size_t i = 0; i < dim; ++i) {
    if (!x[i]) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      FqField::Elem g = gram(i, j);
      if (!g || !y[j]) continue;
      s = f.add(s, f.mul(f.mul(x[i], g), conj(y[j])));
    }
  }
  return s;
}

FqField::Elem FormSpec::quadratic(const FqVector& x) const {
  const FqField& f = *field;
  FqField::Elem s = 0;
  for (std::size_t i = 0; i < dim; ++i) {
    if (!x[i]) continue;
    s = f.add(s, f.mul(qdiag[i], f.mul(x[i], x[i])));
    for (std::size_t j = i + 1; j < dim; ++j)
      if (x[j] && gram(i, j)) s = f.add(s, f.mul(gram(i, j), f.mul(x[i], x[j])));
  }
  return s;
}

bool FormSpec::isotropic(const FqVector& x) const {
  return quadratic() ? this->quadratic(x) == 0 : bilinear(x, x) == 0;
}

bool FormSpec::preserved_by(const FqMatrix& g) const {
  if (kind == FormKind::kNone) return true;
  if (g.rows() != dim || g.cols() != dim) return false;
  FqMatrix right = kind == FormKind::kHermitian ? g.transpose().frobenius(conj_power) : g.transpose();
  if (g * gram * right != gram) return false;
  if (quadratic())
    for (std::size_t i = 0; i < dim; ++i)
      if (this->quadratic(g.row(i)) != qdiag[i]) return false;
  return true;
}

namespace {

FqField::Elem minus_type_xi(const FqField& f) {
  for (unsigned xi = 0; xi < f.q(); ++xi) {
    bool root = false;
    for (unsigned t = 0; t < f.q() && !root; ++t) {
      auto e = static_cast<FqField::Elem>(t);
      root = f.add(f.add(f.mul(e, e), e), static_cast<FqField::Elem>(xi)) == 0;
    }
    if (!root) return static_cast<FqField::Elem>(xi);
  }
  throw std::logic_error("no irreducible t^2 + t + xi");
}

}  // namespace

FormSpec standard_form(FormKind kind, std::size_t dim, unsigned q) {
  FormSpec s;
  s.kind = kind;
  s.dim = dim;
  unsigned p = 0, k = 0;
  if (!is_prime_power(q, &p, &k)) throw InputError("q must be a prime power");
  s.field = FqField::get(kind == FormKind::kHermitian ? q * q : q);
  const FqField& f = *s.field;
  s.gram = FqMatrix(s.field, dim, dim);
  s.qdiag.assign(dim, 0);
  auto pair = [&](std::size_t a, std::size_t b, FqField::Elem ab, FqField::Elem ba) {
    s.gram.at(a, b) = ab;
    s.gram.at(b, a) = ba;
  };
  switch (kind) {
    case FormKind::kNone:
      break;
    case FormKind::kSymplectic: {
      if (dim % 2) throw InputError("symplectic forms need even dimension");
      std::size_t l = dim / 2;
      for (std::size_t i = 0; i < l; ++i) pair(i, l + i, 1, f.neg(1));
      break;
    }
    case FormKind::kQuadraticPlus: {
      if (dim % 2) throw InputError("plus-type forms need even dimension");
      std::size_t l = dim / 2;
      for (std::size_t i = 0; i < l; ++i) pair(i, l + i, 1, 1);
      break;
    }
    case FormKind::kQuadraticMinus: {
      if (dim % 2 || dim < 2) throw InputError("minus-type forms need even dimension >= 2");
      std::size_t l = dim / 2;
      for (std::size_t i = 0; i + 1 < l; ++i) pair(i, l - 1 + i, 1, 1);
      std::size_t x = dim - 2, y = dim - 1;
      FqField::Elem xi = minus_type_xi(f);
      pair(x, y, 1, 1);
      s.qdiag[x] = 1;
      s.qdiag[y] = xi;
      s.gram.at(x, x) = f.from_int(2);
      s.gram.at(y, y) = f.mul(f.from_int(2), xi);
      break;
    }
    case FormKind::kQuadraticOdd: {
      if (dim % 2 == 0) throw InputError("odd orthogonal forms need odd dimension");
      std::size_t l = dim / 2;
      for (std::size_t i = 0; i < l; ++i) pair(i, l + i, 1, 1);
      s.qdiag[dim - 1] = 1;
      s.gram.at(dim - 1, dim - 1) = f.from_int(2);
      break;
    }
    case FormKind::kHermitian: {
      std::size_t l = dim / 2;
      for (std::size_t i = 0; i < l; ++i) pair(i, l + i, 1, 1);
      if (dim % 2) s.gram.at(dim - 1, dim - 1) = 1;
      s.conj_power = k;
      break;
    }
  }
  return s;
}

namespace {

struct QuadData {
  FieldPtr field;
  FqMatrix gram;  // polar form
  FqVector qd;
  FqField::Elem q(const FqVector& x) const {
    const FqField& f = *field;
    FqField::Elem s = 0;
    for (std::size_t i = 0; i < qd.size(); ++i) {
      if (!x[i]) continue;
      s = f.add(s, f.mul(qd[i], f.mul(x[i], x[i])));
      for (std::size_t j = i + 1; j < qd.size(); ++j)
        if (x[j] && gram(i, j)) s = f.add(s, f.mul(gram(i, j), f.mul(x[i], x[j])));
    }
    return s;
  }
  FqField::Elem b(const FqVector& x, const FqVector& y) const {
    FqVector xg = vec_mat(x, gram);
    return dot(*field, xg, y);
  }
  QuadData restrict_to(const FqMatrix& rows) const {
    QuadData r{field, rows * gram * rows.transpose(), {}};
    for (std::size_t i = 0; i < rows.rows(); ++i) r.qd.push_back(q(rows.row(i)));
    return r;
  }
};

// Witt index of a nondegenerate quadratic space, by splitting off hyperbolic pairs.
std::size_t witt_index(const QuadData& s) {
  std::size_t d = s.qd.size();
  if (d == 0) return 0;
  unsigned qq = s.field->q();
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) total *= qq;
  FqVector u;
  for (std::size_t idx = 1; idx < total && u.empty(); ++idx) {
    FqVector v = vector_from_index(idx, d, qq);
    if (s.q(v) == 0) u = v;
  }
  if (u.empty()) return 0;
  const FqField& f = *s.field;
  FqVector ug = vec_mat(u, s.gram);
  std::size_t j = 0;
  while (j < d && ug[j] == 0) ++j;
  if (j == d) throw std::logic_error("singular vector in the radical of a nondegenerate form");
  FqVector w(d, 0);
  w[j] = f.inv(ug[j]);
  FqField::Elem qw = s.q(w);
  for (std::size_t i = 0; i < d; ++i) w[i] = f.sub(w[i], f.mul(qw, u[i]));
  FqMatrix a(s.field, d, 2);
  FqVector wg = vec_mat(w, s.gram);
  for (std::size_t i = 0; i < d; ++i) {
    a.at(i, 0) = ug[i];
    a.at(i, 1) = wg[i];
  }
  FqMatrix comp = a.left_nullspace();
  if (comp.rows() + 2 != d) throw std::logic_error("hyperbolic complement has wrong dimension");
  if (comp.rows() == 0) return 1;
  return 1 + witt_index(s.restrict_to(comp));
}

}  // namespace

SubspaceClass subspace_type(const FormSpec& form, const SubspaceFq& u) {
  if (u.ambient() != form.dim) throw InputError("subspace dimension does not match the form");
  SubspaceClass c;
  c.dim = u.dim();
  const FqMatrix& m = u.basis();
  FqMatrix right = form.kind == FormKind::kHermitian ? m.transpose().frobenius(form.conj_power)
                                                     : m.transpose();
  FqMatrix g = m * form.gram * right;
  c.totally_isotropic = g.is_zero();
  if (form.kind == FormKind::kSymplectic || form.kind == FormKind::kHermitian) {
    c.nondegenerate = g.rank() == c.dim;
    return c;
  }
  if (!form.quadratic()) {
    c.nondegenerate = true;
    return c;
  }
  QuadData qd{form.field, g, {}};
  for (std::size_t i = 0; i < c.dim; ++i) qd.qd.push_back(form.quadratic(m.row(i)));
  bool all_zero_q = true;
  for (auto x : qd.qd) all_zero_q = all_zero_q && x == 0;
  c.totally_singular = c.totally_isotropic && all_zero_q;
  if (form.field->p() == 2) {
    FqMatrix rad = g.left_nullspace();
    c.nondegenerate = rad.rows() == 0 || (rad.rows() == 1 && qd.q(rad.row(0)) != 0);
  } else {
    c.nondegenerate = g.rank() == c.dim;
  }
  if (c.nondegenerate && c.dim % 2 == 0) {
    c.witt_index = witt_index(qd);
    c.sign = 2 * c.witt_index == c.dim ? 1 : -1;
  } else if (c.nondegenerate) {
    c.witt_index = (c.dim - 1) / 2;
  }
  return c;
}

Family parse_family(const std::string& s) {
  if (s == "SL") return Family::kSL;
  if (s == "Sp") return Family::kSp;
  if (s == "SU") return Family::kSU;
  if (s == "GO+" || s == "O+") return Family::kGOPlus;
  if (s == "GO-" || s == "O-") return Family::kGOMinus;
  if (s == "GO" || s == "GO-odd" || s == "O") return Family::kGOOdd;
  throw InputError("unknown classical family '" + s + "'");
}

std::string to_string(Family f) {
  switch (f) {
    case Family::kSL: return "SL";
    case Family::kSp: return "Sp";
    case Family::kSU: return "SU";
    case Family::kGOPlus: return "GO+";
    case Family::kGOMinus: return "GO-";
    case Family::kGOOdd: return "GO";
  }
  return "?";
}

BigInt classical_order(Family family, unsigned m, unsigned q) {
  BigInt Q = q, r = 1;
  switch (family) {
    case Family::kSL:
      r = ipow(Q, m * (m - 1) / 2);
      for (unsigned i = 2; i <= m; ++i) r *= ipow(Q, i) - 1;
      return r;
    case Family::kSU:
      r = ipow(Q, m * (m - 1) / 2);
      for (unsigned i = 2; i <= m; ++i) r *= i % 2 ? BigInt(ipow(Q, i) + 1) : BigInt(ipow(Q, i) - 1);
      return r;
    case Family::kSp: {
      unsigned l = m / 2;
      r = ipow(Q, l * l);
      for (unsigned i = 1; i <= l; ++i) r *= ipow(Q, 2 * i) - 1;
      return r;
    }
    case Family::kGOPlus:
    case Family::kGOMinus: {
      unsigned l = m / 2;
      r = 2 * ipow(Q, l * (l - 1));
      r *= family == Family::kGOPlus ? BigInt(ipow(Q, l) - 1) : BigInt(ipow(Q, l) + 1);
      for (unsigned i = 1; i < l; ++i) r *= ipow(Q, 2 * i) - 1;
      return r;
    }
    case Family::kGOOdd: {
      unsigned l = m / 2;
      r = ipow(Q, l * l);
      for (unsigned i = 1; i <= l; ++i) r *= ipow(Q, 2 * i) - 1;
      if (q % 2) r *= 2;
      return r;
    }
  }
  return r;
}

namespace {

FqMatrix elementary(const FieldPtr& f, std::size_t n,
                    std::initializer_list<std::tuple<std::size_t, std::size_t, FqField::Elem>> adds) {
  FqMatrix g = FqMatrix::identity(f, n);
  for (auto [r, c, a] : adds) g.at(r, c) = f->add(g(r, c), a);
  return g;
}

// Additive generators of the field over its prime field: 1, mu, ..., mu^(k-1).
std::vector<FqField::Elem> additive_basis(const FqField& f) {
  std::vector<FqField::Elem> b;
  for (unsigned i = 0; i < f.k(); ++i) b.push_back(f.exp(i));
  return b;
}

Permutation vector_action(const FqMatrix& g, std::size_t total) {
  unsigned q = g.field()->q();
  std::vector<Point> img(total);
  for (std::size_t i = 0; i < total; ++i)
    img[i] = static_cast<Point>(vector_index(vec_mat(vector_from_index(i, g.rows(), q), g), q));
  return Permutation(std::move(img));
}

// Adds candidate isometries until the vector action reaches the target order.
void grow_generators(ClassicalGroup& cg) {
  const FormSpec& form = cg.form;
  const FqField& f = *form.field;
  std::size_t d = form.dim;
  std::size_t total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    total *= f.q();
    if (total > 65536)
      throw InputError(cg.name + " is outside the supported range (field^dim > 65536)");
  }
  StabilizerChain chain(total);
  auto offer = [&](const FqMatrix& g) {
    if (chain.order() == cg.order) return;
    if (!form.preserved_by(g)) throw std::logic_error("candidate isometry does not preserve the form");
    Permutation p = vector_action(g, total);
    if (chain.contains(p)) return;
    chain.extend(p);
    cg.gens.push_back(g);
  };
  std::vector<FqField::Elem> trace_zero;
  if (form.kind == FormKind::kHermitian)
    for (unsigned a = 1; a < f.q(); ++a) {
      auto e = static_cast<FqField::Elem>(a);
      if (f.add(e, form.conj(e)) == 0) trace_zero.push_back(e);
    }
  for (std::size_t idx = 1; idx < total && chain.order() != cg.order; ++idx) {
    FqVector v = vector_from_index(idx, d, f.q());
    if (form.kind == FormKind::kHermitian) {
      if (form.bilinear(v, v) != 0) continue;
      // unitary transvection x -> x + a h(x,v) v with a + a^q = 0
      for (auto a : trace_zero) {
        FqMatrix g = FqMatrix::identity(form.field, d);
        for (std::size_t i = 0; i < d; ++i) {
          FqVector e(d, 0);
          e[i] = 1;
          FqField::Elem c = f.mul(a, form.bilinear(e, v));
          for (std::size_t j = 0; j < d; ++j) g.at(i, j) = f.add(g(i, j), f.mul(c, v[j]));
        }
        offer(g);
      }
    } else {
      FqField::Elem qv = form.quadratic(v);
      if (qv == 0) continue;
      // reflection (orthogonal transvection when q is even) x -> x - B(x,v)/Q(v) v
      FqMatrix g = FqMatrix::identity(form.field, d);
      for (std::size_t i = 0; i < d; ++i) {
        FqVector e(d, 0);
        e[i] = 1;
        FqField::Elem c = f.div(form.bilinear(e, v), qv);
        for (std::size_t j = 0; j < d; ++j) g.at(i, j) = f.sub(g(i, j), f.mul(c, v[j]));
      }
      offer(g);
    }
  }
  if (chain.order() != cg.order && form.kind == FormKind::kHermitian) {
    // transvections only reach a proper subgroup of SU_3(q); add products of
    // quasi-reflections r_v(c) r_w(c)^-1 for non-isotropic v, w and c^(q+1) = 1
    auto quasi = [&](const FqVector& v, FqField::Elem c) {
      FqField::Elem s = f.div(f.sub(c, 1), form.bilinear(v, v));
      FqMatrix g = FqMatrix::identity(form.field, d);
      for (std::size_t i = 0; i < d; ++i) {
        FqVector e(d, 0);
        e[i] = 1;
        FqField::Elem t = f.mul(s, form.bilinear(e, v));
        for (std::size_t j = 0; j < d; ++j) g.at(i, j) = f.add(g(i, j), f.mul(t, v[j]));
      }
      return g;
    };
    FqField::Elem c = 0;
    for (unsigned a = 2; a < f.q() && !c; ++a) {
      auto e = static_cast<FqField::Elem>(a);
      if (f.mul(e, form.conj(e)) == 1) c = e;
    }
    FqVector w;
    for (std::size_t idx = 1; idx < total && c && chain.order() != cg.order; ++idx) {
      FqVector v = vector_from_index(idx, d, f.q());
      if (form.bilinear(v, v) == 0) continue;
      if (w.empty()) {
        w = v;
        continue;
      }
      offer(quasi(v, c) * quasi(w, f.inv(c)));
    }
  }
  if (chain.order() != cg.order && form.quadratic() && d >= 4) {
    // reflections miss part of GO+(4,2); swapping two hyperbolic pairs completes it
    std::size_t l = d / 2;
    FqMatrix g(form.field, d, d);
    for (std::size_t i = 0; i < d; ++i) g.at(i, i) = 1;
    if (form.kind == FormKind::kQuadraticPlus) {
      g.at(0, 0) = g.at(1, 1) = g.at(l, l) = g.at(l + 1, l + 1) = 0;
      g.at(0, 1) = g.at(1, 0) = g.at(l, l + 1) = g.at(l + 1, l) = 1;
      offer(g);
    }
  }
  if (chain.order() != cg.order)
    throw InputError("could not generate " + cg.name + ": reached order " + chain.order().get_str() +
                     " of " + cg.order.get_str());
}

}  // namespace

ClassicalGroup classical_group(Family family, unsigned m, unsigned q) {
  unsigned p = 0, k = 0;
  if (!is_prime_power(q, &p, &k)) throw InputError("q = " + std::to_string(q) + " is not a prime power");
  if (q > 9) throw InputError("q = " + std::to_string(q) + " is outside the supported range q <= 9");
  if (m < 2 || m > 12) throw InputError("dimension must lie in 2..12");
  bool even = m % 2 == 0;
  if ((family == Family::kSp || family == Family::kGOPlus || family == Family::kGOMinus) && !even)
    throw InputError(to_string(family) + " needs even dimension");
  if (family == Family::kGOOdd && (even || m < 3)) throw InputError("GO needs odd dimension >= 3");

  ClassicalGroup cg;
  cg.family = family;
  cg.m = m;
  cg.q = q;
  cg.order = classical_order(family, m, q);
  cg.name = to_string(family) + "(" + std::to_string(m) + "," + std::to_string(q) + ")";
  switch (family) {
    case Family::kSL: {
      cg.form = standard_form(FormKind::kNone, m, q);
      const auto& f = cg.form.field;
      for (auto a : additive_basis(*f))
        for (std::size_t i = 0; i + 1 < m; ++i) {
          cg.gens.push_back(elementary(f, m, {{i, i + 1, a}}));
          cg.gens.push_back(elementary(f, m, {{i + 1, i, a}}));
        }
      break;
    }
    case Family::kSp: {
      cg.form = standard_form(FormKind::kSymplectic, m, q);
      const auto& f = cg.form.field;
      std::size_t l = m / 2;
      for (auto a : additive_basis(*f)) {
        FqField::Elem na = f->neg(a);
        for (std::size_t i = 0; i + 1 < l; ++i) {
          // e_i -> e_i + a e_j, f_j -> f_j - a f_i for j = i +- 1
          cg.gens.push_back(elementary(f, m, {{i, i + 1, a}, {l + i + 1, l + i, na}}));
          cg.gens.push_back(elementary(f, m, {{i + 1, i, a}, {l + i, l + i + 1, na}}));
        }
        cg.gens.push_back(elementary(f, m, {{l - 1, 2 * l - 1, a}}));
        cg.gens.push_back(elementary(f, m, {{2 * l - 1, l - 1, a}}));
      }
      break;
    }
    case Family::kSU:
      cg.form = standard_form(FormKind::kHermitian, m, q);
      grow_generators(cg);
      break;
    case Family::kGOPlus:
      cg.form = standard_form(FormKind::kQuadraticPlus, m, q);
      grow_generators(cg);
      break;
    case Family::kGOMinus:
      cg.form = standard_form(FormKind::kQuadraticMinus, m, q);
      grow_generators(cg);
      break;
    case Family::kGOOdd:
      cg.form = standard_form(FormKind::kQuadraticOdd, m, q);
      grow_generators(cg);
      break;
  }
  for (const auto& g : cg.gens)
    if (!cg.form.preserved_by(g)) throw std::logic_error("generator does not preserve the form");
  return cg;
}

}  // namespace permres
