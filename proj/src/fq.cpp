#include "permres/fq.hpp"

#include <map>
#include <mutex>

#include "permres/errors.hpp"

namespace permres {

bool is_prime_power(unsigned q, unsigned* p_out, unsigned* k_out) {
  if (q < 2) return false;
  unsigned p = 2;
  while (q % p) ++p;
  unsigned k = 0, r = q;
  while (r % p == 0) {
    r /= p;
    ++k;
  }
  if (r != 1) return false;
  if (p_out) *p_out = p;
  if (k_out) *k_out = k;
  return true;
}

FieldPtr FqField::get(unsigned q) {
  static std::mutex mu;
  static std::map<unsigned, FieldPtr> cache;
  unsigned p = 0, k = 0;
  if (!is_prime_power(q, &p, &k)) throw InputError("field order " + std::to_string(q) + " is not a prime power");
  if (q > 512) throw InputError("field order " + std::to_string(q) + " exceeds 512");
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(q);
  if (it != cache.end()) return it->second;
  FieldPtr f(new FqField(p, k));
  cache.emplace(q, f);
  return f;
}

namespace {

// Digits of e in base p, least significant first.
std::vector<unsigned> digits(unsigned e, unsigned p, unsigned k) {
  std::vector<unsigned> d(k);
  for (unsigned i = 0; i < k; ++i) {
    d[i] = e % p;
    e /= p;
  }
  return d;
}

unsigned undigits(const std::vector<unsigned>& d, unsigned p) {
  unsigned e = 0;
  for (std::size_t i = d.size(); i-- > 0;) e = e * p + d[i];
  return e;
}

// x * e modulo the monic polynomial x^k + sum f_i x^i.
unsigned times_x(unsigned e, const std::vector<unsigned>& f, unsigned p) {
  unsigned k = static_cast<unsigned>(f.size());
  auto c = digits(e, p, k);
  unsigned top = c[k - 1];
  std::vector<unsigned> r(k);
  for (unsigned i = k; i-- > 1;) r[i] = c[i - 1];
  r[0] = 0;
  for (unsigned i = 0; i < k; ++i) r[i] = (r[i] + (p - f[i]) * top) % p;
  return undigits(r, p);
}

}  // namespace

FqField::FqField(unsigned p, unsigned k) : p_(p), k_(k) {
  q_ = 1;
  for (unsigned i = 0; i < k; ++i) q_ *= p;
  // primitive polynomial: x generates the multiplicative group
  for (unsigned c = 1; c < q_ && modulus_.empty(); ++c) {
    auto f = digits(c, p, k);
    if (f[0] == 0) continue;
    unsigned e = 1, steps = 0;
    do {
      e = k == 1 ? (e * ((p - f[0]) % p)) % p : times_x(e, f, p);
      ++steps;
    } while (e != 1 && steps < q_);
    if (e == 1 && steps == q_ - 1) modulus_ = f;
  }
  if (modulus_.empty()) throw std::logic_error("no primitive polynomial found");

  add_.resize(static_cast<std::size_t>(q_) * q_);
  neg_.resize(q_);
  for (unsigned a = 0; a < q_; ++a) {
    auto da = digits(a, p, k);
    std::vector<unsigned> dn(k);
    for (unsigned i = 0; i < k; ++i) dn[i] = (p - da[i]) % p;
    neg_[a] = static_cast<Elem>(undigits(dn, p));
    for (unsigned b = 0; b < q_; ++b) {
      auto db = digits(b, p, k);
      std::vector<unsigned> s(k);
      for (unsigned i = 0; i < k; ++i) s[i] = (da[i] + db[i]) % p;
      add_[static_cast<std::size_t>(a) * q_ + b] = static_cast<Elem>(undigits(s, p));
    }
  }
  exp_.resize(2 * static_cast<std::size_t>(q_ - 1) + 1);
  log_.assign(q_, 0);
  unsigned e = 1;
  for (unsigned i = 0; i < q_ - 1; ++i) {
    exp_[i] = static_cast<Elem>(e);
    log_[e] = i;
    e = k == 1 ? (e * ((p - modulus_[0]) % p)) % p : times_x(e, modulus_, p);
  }
  for (std::size_t i = q_ - 1; i < exp_.size(); ++i) exp_[i] = exp_[i - (q_ - 1)];
}

FqField::Elem FqField::inv(Elem a) const {
  if (a == 0) throw InputError("inverse of zero in GF(" + std::to_string(q_) + ")");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

FqField::Elem FqField::pow(Elem a, unsigned long long e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  return exp_[static_cast<std::size_t>((static_cast<unsigned long long>(log_[a]) * (e % (q_ - 1))) % (q_ - 1))];
}

FqField::Elem FqField::from_int(long long v) const {
  long long r = v % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Elem>(r);
}

unsigned FqField::element_order(Elem a) const {
  if (a == 0) throw InputError("zero has no multiplicative order");
  unsigned n = q_ - 1, l = log_[a];
  unsigned g = n, t = l;
  while (t) {
    unsigned r = g % t;
    g = t;
    t = r;
  }
  return n / g;
}

FqMatrix::FqMatrix(FieldPtr f, std::size_t rows, std::size_t cols)
    : f_(std::move(f)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

FqMatrix FqMatrix::identity(FieldPtr f, std::size_t n) {
  FqMatrix m(std::move(f), n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

FqMatrix FqMatrix::from_rows(FieldPtr f, const std::vector<FqVector>& rows, std::size_t cols) {
  FqMatrix m(f, rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw InputError("row length mismatch");
    for (std::size_t j = 0; j < cols; ++j) {
      if (rows[i][j] >= f->q()) throw InputError("matrix entry outside the field");
      m.at(i, j) = rows[i][j];
    }
  }
  return m;
}

FqVector FqMatrix::row(std::size_t r) const {
  return FqVector(a_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                  a_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

FqMatrix FqMatrix::operator*(const FqMatrix& o) const {
  if (cols_ != o.rows_) throw InputError("matrix shape mismatch in product");
  const FqField& f = *f_;
  FqMatrix r(f_, rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      Elem a = (*this)(i, k);
      if (!a) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) = f.add(r(i, j), f.mul(a, o(k, j)));
    }
  return r;
}

FqMatrix FqMatrix::operator+(const FqMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw InputError("matrix shape mismatch in sum");
  FqMatrix r(f_, rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_->add(a_[i], o.a_[i]);
  return r;
}

FqMatrix FqMatrix::transpose() const {
  FqMatrix r(f_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = (*this)(i, j);
  return r;
}

FqMatrix FqMatrix::frobenius(unsigned power) const {
  unsigned long long e = 1;
  for (unsigned i = 0; i < power; ++i) e *= f_->p();
  FqMatrix r(*this);
  for (auto& x : r.a_) x = f_->pow(x, e);
  return r;
}

bool FqMatrix::operator==(const FqMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
}

bool FqMatrix::is_zero() const {
  for (Elem x : a_)
    if (x) return false;
  return true;
}

FqMatrix FqMatrix::rref(std::vector<std::size_t>* pivots) const {
  const FqField& f = *f_;
  FqMatrix m(*this);
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t s = r;
    while (s < rows_ && m(s, c) == 0) ++s;
    if (s == rows_) continue;
    if (s != r)
      for (std::size_t j = 0; j < cols_; ++j) std::swap(m.at(s, j), m.at(r, j));
    Elem inv = f.inv(m(r, c));
    for (std::size_t j = 0; j < cols_; ++j) m.at(r, j) = f.mul(m(r, j), inv);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || m(i, c) == 0) continue;
      Elem t = f.neg(m(i, c));
      for (std::size_t j = 0; j < cols_; ++j) m.at(i, j) = f.add(m(i, j), f.mul(t, m(r, j)));
    }
    piv.push_back(c);
    ++r;
  }
  if (pivots) *pivots = std::move(piv);
  return m;
}

std::size_t FqMatrix::rank() const {
  std::vector<std::size_t> piv;
  rref(&piv);
  return piv.size();
}

std::optional<FqMatrix> FqMatrix::inverse() const {
  if (rows_ != cols_) throw InputError("inverse of a non-square matrix");
  std::size_t n = rows_;
  FqMatrix aug(f_, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = (*this)(i, j);
    aug.at(i, n + i) = 1;
  }
  std::vector<std::size_t> piv;
  FqMatrix r = aug.rref(&piv);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  FqMatrix out(f_, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.at(i, j) = r(i, n + j);
  return out;
}

FqMatrix::Elem FqMatrix::determinant() const {
  if (rows_ != cols_) throw InputError("determinant of a non-square matrix");
  const FqField& f = *f_;
  FqMatrix m(*this);
  std::size_t n = rows_;
  Elem det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t s = c;
    while (s < n && m(s, c) == 0) ++s;
    if (s == n) return 0;
    if (s != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(s, j), m.at(c, j));
      det = f.neg(det);
    }
    det = f.mul(det, m(c, c));
    Elem inv = f.inv(m(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Elem t = f.neg(f.mul(m(i, c), inv));
      for (std::size_t j = c; j < n; ++j) m.at(i, j) = f.add(m(i, j), f.mul(t, m(c, j)));
    }
  }
  return det;
}

FqMatrix FqMatrix::left_nullspace() const {
  // x M = 0  <=>  M^T x^T = 0
  const FqField& f = *f_;
  FqMatrix t = transpose();
  std::vector<std::size_t> piv;
  FqMatrix r = t.rref(&piv);
  std::vector<char> is_piv(t.cols(), 0);
  for (auto c : piv) is_piv[c] = 1;
  std::vector<FqVector> basis;
  for (std::size_t free = 0; free < t.cols(); ++free) {
    if (is_piv[free]) continue;
    FqVector v(t.cols(), 0);
    v[free] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = f.neg(r(i, free));
    basis.push_back(std::move(v));
  }
  return from_rows(f_, basis, rows_);
}

FqVector vec_mat(const FqVector& v, const FqMatrix& m) {
  const FqField& f = *m.field();
  if (v.size() != m.rows()) throw InputError("vector length mismatch");
  FqVector r(m.cols(), 0);
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!v[k]) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) r[j] = f.add(r[j], f.mul(v[k], m(k, j)));
  }
  return r;
}

FqField::Elem dot(const FqField& f, const FqVector& a, const FqVector& b) {
  FqField::Elem s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = f.add(s, f.mul(a[i], b[i]));
  return s;
}

std::string format_vector(const FqVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s + ")";
}

std::size_t vector_index(const FqVector& v, unsigned q) {
  std::size_t idx = 0;
  for (auto x : v) idx = idx * q + x;
  return idx;
}

FqVector vector_from_index(std::size_t idx, std::size_t dim, unsigned q) {
  FqVector v(dim);
  for (std::size_t i = dim; i-- > 0;) {
    v[i] = static_cast<FqField::Elem>(idx % q);
    idx /= q;
  }
  return v;
}

SubspaceFq SubspaceFq::span(const FqMatrix& rows) {
  std::vector<std::size_t> piv;
  FqMatrix r = rows.rref(&piv);
  if (piv.empty()) throw InputError("zero subspace where a subspace is required");
  SubspaceFq s;
  s.basis_ = FqMatrix(rows.field(), piv.size(), rows.cols());
  for (std::size_t i = 0; i < piv.size(); ++i)
    for (std::size_t j = 0; j < rows.cols(); ++j) s.basis_.at(i, j) = r(i, j);
  return s;
}

SubspaceFq SubspaceFq::span(FieldPtr f, const std::vector<FqVector>& rows, std::size_t ambient) {
  return span(FqMatrix::from_rows(std::move(f), rows, ambient));
}

SubspaceFq SubspaceFq::image(const FqMatrix& g) const { return span(basis_ * g); }

bool SubspaceFq::contains(const FqVector& v) const {
  FqMatrix m(basis_.field(), dim() + 1, ambient());
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < ambient(); ++j) m.at(i, j) = basis_(i, j);
  for (std::size_t j = 0; j < ambient(); ++j) m.at(dim(), j) = v[j];
  return m.rank() == dim();
}

std::string SubspaceFq::format() const {
  std::string s = "<";
  for (std::size_t i = 0; i < dim(); ++i) {
    if (i) s += ',';
    s += format_vector(basis_.row(i));
  }
  return s + ">";
}

}  // namespace permres
