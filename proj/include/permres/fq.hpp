#pragma once

// Small finite fields, matrices over them, and canonical subspaces.
// Matrices act on row vectors: x -> x g.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace permres {

class FqField;
using FieldPtr = std::shared_ptr<const FqField>;

// Element e encodes the polynomial sum_i c_i x^i, e = sum_i c_i p^i, reduced
// modulo the first primitive polynomial of degree k over GF(p) (first in
// the order of the same integer encoding of its lower coefficients).
class FqField {
 public:
  using Elem = std::uint16_t;

  static FieldPtr get(unsigned q);  // q = p^k <= 512, cached

  unsigned q() const { return q_; }
  unsigned p() const { return p_; }
  unsigned k() const { return k_; }
  const std::vector<unsigned>& modulus() const { return modulus_; }  // c_0..c_{k-1}, monic

  Elem add(Elem a, Elem b) const { return add_[static_cast<std::size_t>(a) * q_ + b]; }
  Elem neg(Elem a) const { return neg_[a]; }
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[static_cast<std::size_t>(log_[a]) + log_[b]];
  }
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, unsigned long long e) const;
  Elem primitive_element() const { return exp_[1]; }
  unsigned log(Elem a) const { return log_[a]; }  // a != 0
  Elem exp(unsigned i) const { return exp_[i % (q_ - 1)]; }
  Elem from_int(long long v) const;  // image of an integer in the prime field
  unsigned element_order(Elem a) const;

 private:
  FqField(unsigned p, unsigned k);

  unsigned q_, p_, k_;
  std::vector<unsigned> modulus_;
  std::vector<Elem> add_, neg_, exp_;
  std::vector<std::uint32_t> log_;
};

bool is_prime_power(unsigned q, unsigned* p = nullptr, unsigned* k = nullptr);

using FqVector = std::vector<FqField::Elem>;

class FqMatrix {
 public:
  using Elem = FqField::Elem;

  FqMatrix() = default;
  FqMatrix(FieldPtr f, std::size_t rows, std::size_t cols);
  static FqMatrix identity(FieldPtr f, std::size_t n);
  static FqMatrix from_rows(FieldPtr f, const std::vector<FqVector>& rows, std::size_t cols);

  const FieldPtr& field() const { return f_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Elem operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  Elem& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  FqVector row(std::size_t r) const;
  const std::vector<Elem>& data() const { return a_; }

  FqMatrix operator*(const FqMatrix& o) const;
  FqMatrix operator+(const FqMatrix& o) const;
  FqMatrix transpose() const;
  FqMatrix frobenius(unsigned power_of_p) const;  // entrywise a -> a^(p^power)
  bool operator==(const FqMatrix& o) const;
  bool operator!=(const FqMatrix& o) const { return !(*this == o); }
  bool is_zero() const;

  // Reduced row echelon form; pivot columns returned through the argument.
  FqMatrix rref(std::vector<std::size_t>* pivots = nullptr) const;
  std::size_t rank() const;
  std::optional<FqMatrix> inverse() const;
  Elem determinant() const;
  // Basis of {x : x M = 0} as rows.
  FqMatrix left_nullspace() const;

 private:
  FieldPtr f_;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Elem> a_;
};

FqVector vec_mat(const FqVector& v, const FqMatrix& m);
FqField::Elem dot(const FqField& f, const FqVector& a, const FqVector& b);
std::string format_vector(const FqVector& v);

// Index of a vector when read as base-q digits (first coordinate most significant)
std::size_t vector_index(const FqVector& v, unsigned q);
FqVector vector_from_index(std::size_t idx, std::size_t dim, unsigned q);

// A subspace stored as the nonzero rows of its reduced row echelon form.
class SubspaceFq {
 public:
  SubspaceFq() = default;
  // rows need not be independent; the zero space is rejected
  static SubspaceFq span(const FqMatrix& rows);
  static SubspaceFq span(FieldPtr f, const std::vector<FqVector>& rows, std::size_t ambient);

  std::size_t dim() const { return basis_.rows(); }
  std::size_t ambient() const { return basis_.cols(); }
  const FqMatrix& basis() const { return basis_; }
  SubspaceFq image(const FqMatrix& g) const;
  bool contains(const FqVector& v) const;
  bool operator==(const SubspaceFq& o) const { return basis_ == o.basis_; }
  const std::vector<FqField::Elem>& key() const { return basis_.data(); }
  std::string format() const;

 private:
  FqMatrix basis_;
};

}  // namespace permres
