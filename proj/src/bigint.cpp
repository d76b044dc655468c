#include "permres/bigint.hpp"

#include "permres/errors.hpp"

namespace permres {

BigInt factorial(unsigned n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigInt binomial(unsigned n, unsigned k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

BigInt ipow(const BigInt& base, unsigned long exp) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

unsigned long ceil_log(const BigInt& base, const BigInt& x) {
  if (base < 2) throw InputError("logarithm base must be at least 2");
  if (x < 1) throw InputError("logarithm argument must be positive");
  unsigned long t = 0;
  BigInt p = 1;
  while (p < x) {
    p *= base;
    ++t;
  }
  return t;
}

std::vector<std::pair<BigInt, unsigned>> factorize(const BigInt& n) {
  std::vector<std::pair<BigInt, unsigned>> out;
  if (n < 1) throw InputError("factorize needs a positive integer");
  BigInt m = n;
  for (BigInt p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (m > 1) out.emplace_back(m, 1);
  return out;
}

BigInt parse_bigint(const std::string& text) {
  BigInt r;
  if (text.empty() || r.set_str(text, 10) != 0)
    throw InputError("not an integer: '" + text + "'");
  return r;
}

Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0)
    throw InputError("not a rational: '" + text + "'");
  if (r.get_den() == 0) throw InputError("zero denominator: '" + text + "'");
  r.canonicalize();
  return r;
}

}  // namespace permres
