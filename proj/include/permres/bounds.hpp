#pragma once

// Closed-form bounds, the M(eps) / N(c, delta) thresholds and certified
// order-bound checks. Logarithmic comparisons use interval arithmetic with
// outward rounding; a verdict is only given when the interval decides it.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "permres/bigint.hpp"
#include "permres/budget.hpp"
#include "permres/group.hpp"

namespace permres {

enum class Verdict { kHolds, kFails, kInconclusive, kPreconditionUnmet, kEvaluated };
const char* to_string(Verdict v);

struct BoundReport {
  std::string name;
  std::vector<std::pair<std::string, std::string>> params;
  std::string bound_value;
  std::string measured;
  Verdict verdict = Verdict::kEvaluated;
  std::string note;
};

// ceil(log_b dq) + b_L
unsigned long prod_bound(const BigInt& delta_size, const BigInt& dq, unsigned long bl);
// ceil(log |G| / log n) + 3
unsigned long faw_bound(const BigInt& order, const BigInt& n);
// max{4, ceil(log k / log |T|) + 2}
unsigned long diag_bound(const BigInt& k, const BigInt& t);
// ceil(log_{ceil(m/k)} m) * (ceil(m/k) - 1)
unsigned long subsets_bound(unsigned long m, unsigned long k);
// max{6, ceil(log_{m/k} k) + 3}
unsigned long partition_bound(unsigned long m, unsigned long k);
// d^(n-1)
BigInt bcp_order_bound(const BigInt& d, unsigned long n);

// Evaluates one of the formulas above by name from string parameters, and
// compares against a measured value (measured <= bound) when one is given.
BoundReport formula_report(const std::string& name, const std::map<std::string, std::string>& params,
                           const std::optional<BigInt>& measured = std::nullopt);

// Certified test of m^(3/2) <= (1+eps)^(m/e - 1).
bool threshold_inequality(unsigned long m, const Rational& eps);
// Least M >= ceil(5e) with the inequality for every m >= M.
unsigned long m_epsilon(const Rational& eps);
// N(0, delta) = M(delta); N(c, delta) = max(N(c-1, eps), M(eps), c) with 1+eps = (1+delta)^(3/5).
unsigned long n_c_delta(unsigned c, const Rational& delta);

// |G| < d^(n-1), for G verified to have no section A_d.
BoundReport lemma22_check(const PermGroup& g, unsigned d, Budget& budget = unlimited_budget());
// |G| <= ((1+delta) d / e)^(n-1), given d >= N(c, delta) and every c-point
// stabilizer verified to have no section A_d (G itself when c = 0).
BoundReport theorem13_check(const PermGroup& g, unsigned c, unsigned d, const Rational& delta,
                            Budget& budget = unlimited_budget());
// The same comparison for Sym(d-1) in its natural action; the note carries the
// ratio ln|G| / ln(bound).
BoundReport theorem13_sd_probe(unsigned d, const Rational& delta);

}  // namespace permres
