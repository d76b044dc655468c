#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace permres {

using BigInt = mpz_class;
using Rational = mpq_class;

inline std::string to_string(const BigInt& x) { return x.get_str(); }

BigInt factorial(unsigned n);
BigInt binomial(unsigned n, unsigned k);
BigInt ipow(const BigInt& base, unsigned long exp);

// Least t >= 0 with base^t >= x; base >= 2, x >= 1.
unsigned long ceil_log(const BigInt& base, const BigInt& x);

// Prime factorization by trial division, ascending primes.
std::vector<std::pair<BigInt, unsigned>> factorize(const BigInt& n);

BigInt parse_bigint(const std::string& text);
Rational parse_rational(const std::string& text);

}  // namespace permres
