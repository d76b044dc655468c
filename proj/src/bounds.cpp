#include "permres/bounds.hpp"

#include <mpfr.h>

#include <mutex>
#include <sstream>
#include <stdexcept>

#include "permres/errors.hpp"
#include "permres/search.hpp"
#include "permres/structure.hpp"

namespace permres {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kHolds: return "holds";
    case Verdict::kFails: return "fails";
    case Verdict::kInconclusive: return "inconclusive-interval";
    case Verdict::kPreconditionUnmet: return "precondition-unmet";
    case Verdict::kEvaluated: return "evaluated";
  }
  return "?";
}

namespace {

// ceil(log_b x) with the bracketing b^(t-1) < x <= b^t asserted.
unsigned long checked_ceil_log(const BigInt& b, const BigInt& x) {
  unsigned long t = ceil_log(b, x);
  BigInt hi = ipow(b, static_cast<unsigned>(t));
  if (hi < x || (t > 0 && ipow(b, static_cast<unsigned>(t - 1)) >= x))
    throw std::logic_error("ceil_log bracketing violated");
  return t;
}

}  // namespace

unsigned long prod_bound(const BigInt& delta_size, const BigInt& dq, unsigned long bl) {
  return checked_ceil_log(delta_size, dq) + bl;
}

unsigned long faw_bound(const BigInt& order, const BigInt& n) { return checked_ceil_log(n, order) + 3; }

unsigned long diag_bound(const BigInt& k, const BigInt& t) {
  return std::max(4UL, checked_ceil_log(t, k) + 2);
}

unsigned long subsets_bound(unsigned long m, unsigned long k) {
  if (k == 0 || m == 0) throw InputError("subsets_bound needs positive m and k");
  unsigned long r = (m + k - 1) / k;
  return checked_ceil_log(BigInt(r), BigInt(m)) * (r - 1);
}

unsigned long partition_bound(unsigned long m, unsigned long k) {
  if (k == 0 || m % k != 0) throw InputError("partition_bound needs k dividing m");
  return std::max(6UL, checked_ceil_log(BigInt(m / k), BigInt(k)) + 3);
}

BigInt bcp_order_bound(const BigInt& d, unsigned long n) {
  if (n < 1) throw InputError("bcp_order_bound needs n >= 1");
  return ipow(d, static_cast<unsigned>(n - 1));
}

BoundReport formula_report(const std::string& name, const std::map<std::string, std::string>& params,
                           const std::optional<BigInt>& measured) {
  auto get = [&](const char* key) {
    auto it = params.find(key);
    if (it == params.end()) throw InputError(name + ": missing parameter '" + key + "'");
    BigInt v = parse_bigint(it->second);
    if (v < 1) throw InputError(name + ": parameter '" + std::string(key) + "' must be positive");
    return v;
  };
  auto small = [&](const char* key) {
    BigInt v = get(key);
    if (!v.fits_ulong_p()) throw InputError(name + ": parameter '" + std::string(key) + "' is too large");
    return v.get_ui();
  };
  BoundReport r;
  r.name = name;
  for (const auto& [k, v] : params) r.params.emplace_back(k, v);
  BigInt value;
  if (name == "prod_bound") value = prod_bound(get("delta"), get("dq"), small("bl"));
  else if (name == "faw_bound") value = faw_bound(get("order"), get("n"));
  else if (name == "diag_bound") value = diag_bound(get("k"), get("t"));
  else if (name == "subsets_bound") value = subsets_bound(small("m"), small("k"));
  else if (name == "partition_bound") value = partition_bound(small("m"), small("k"));
  else if (name == "bcp_order_bound") value = bcp_order_bound(get("d"), small("n"));
  else throw InputError("unknown formula '" + name + "'");
  r.bound_value = value.get_str();
  if (measured) {
    r.measured = measured->get_str();
    // the order bound is strict; the base-size bounds are not
    bool ok = name == "bcp_order_bound" ? *measured < value : *measured <= value;
    r.verdict = ok ? Verdict::kHolds : Verdict::kFails;
  }
  return r;
}

namespace {

constexpr mpfr_prec_t kStartPrecision = 128;
constexpr mpfr_prec_t kMaxPrecision = 1 << 16;

class Real {
 public:
  explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Real() { mpfr_clear(v_); }
  Real(const Real&) = delete;
  Real& operator=(const Real&) = delete;
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

// Closed interval [lo, hi] with outward rounding.
struct Interval {
  Real lo, hi;
  explicit Interval(mpfr_prec_t p) : lo(p), hi(p) {}
};

void ln_int(Interval& out, const BigInt& x) {
  mpfr_set_z(out.lo.get(), x.get_mpz_t(), MPFR_RNDD);
  mpfr_log(out.lo.get(), out.lo.get(), MPFR_RNDD);
  mpfr_set_z(out.hi.get(), x.get_mpz_t(), MPFR_RNDU);
  mpfr_log(out.hi.get(), out.hi.get(), MPFR_RNDU);
}

// ln(p/q) for positive rational p/q
void ln_rat(Interval& out, const Rational& r, mpfr_prec_t prec) {
  Interval a(prec), b(prec);
  ln_int(a, r.get_num());
  ln_int(b, r.get_den());
  mpfr_sub(out.lo.get(), a.lo.get(), b.hi.get(), MPFR_RNDD);
  mpfr_sub(out.hi.get(), a.hi.get(), b.lo.get(), MPFR_RNDU);
}

void euler_e(Interval& out) {
  mpfr_set_ui(out.lo.get(), 1, MPFR_RNDN);
  mpfr_exp(out.lo.get(), out.lo.get(), MPFR_RNDD);
  mpfr_set_ui(out.hi.get(), 1, MPFR_RNDN);
  mpfr_exp(out.hi.get(), out.hi.get(), MPFR_RNDU);
}

// ln(1+eps) where 1+eps = base^((3/5)^j); positive when base > 1.
void ln_one_plus(Interval& out, const Rational& base, unsigned j, mpfr_prec_t prec) {
  ln_rat(out, base, prec);
  BigInt num = ipow(BigInt(3), j), den = ipow(BigInt(5), j);
  mpfr_mul_z(out.lo.get(), out.lo.get(), num.get_mpz_t(), MPFR_RNDD);
  mpfr_div_z(out.lo.get(), out.lo.get(), den.get_mpz_t(), MPFR_RNDD);
  mpfr_mul_z(out.hi.get(), out.hi.get(), num.get_mpz_t(), MPFR_RNDU);
  mpfr_div_z(out.hi.get(), out.hi.get(), den.get_mpz_t(), MPFR_RNDU);
}

// f(m) = (m/e - 1) ln(1+eps) - (3/2) ln m; the inequality holds iff f(m) >= 0.
// Returns +1 / -1 when certified, 0 when the interval contains 0.
int threshold_sign(unsigned long m, const Rational& base, unsigned j, mpfr_prec_t prec) {
  Interval e(prec), l(prec), lnm(prec), a(prec), f(prec);
  euler_e(e);
  ln_one_plus(l, base, j, prec);
  ln_int(lnm, BigInt(m));
  // m/e - 1 > 0 for m >= 3
  mpfr_ui_div(a.lo.get(), m, e.hi.get(), MPFR_RNDD);
  mpfr_sub_ui(a.lo.get(), a.lo.get(), 1, MPFR_RNDD);
  mpfr_ui_div(a.hi.get(), m, e.lo.get(), MPFR_RNDU);
  mpfr_sub_ui(a.hi.get(), a.hi.get(), 1, MPFR_RNDU);
  mpfr_mul(a.lo.get(), a.lo.get(), l.lo.get(), MPFR_RNDD);
  mpfr_mul(a.hi.get(), a.hi.get(), l.hi.get(), MPFR_RNDU);
  mpfr_mul_ui(lnm.lo.get(), lnm.lo.get(), 3, MPFR_RNDD);
  mpfr_div_ui(lnm.lo.get(), lnm.lo.get(), 2, MPFR_RNDD);
  mpfr_mul_ui(lnm.hi.get(), lnm.hi.get(), 3, MPFR_RNDU);
  mpfr_div_ui(lnm.hi.get(), lnm.hi.get(), 2, MPFR_RNDU);
  mpfr_sub(f.lo.get(), a.lo.get(), lnm.hi.get(), MPFR_RNDD);
  mpfr_sub(f.hi.get(), a.hi.get(), lnm.lo.get(), MPFR_RNDU);
  if (mpfr_sgn(f.lo.get()) >= 0) return 1;
  if (mpfr_sgn(f.hi.get()) < 0) return -1;
  return 0;
}

bool certified_threshold(unsigned long m, const Rational& base, unsigned j) {
  for (mpfr_prec_t p = kStartPrecision; p <= kMaxPrecision; p *= 2) {
    int s = threshold_sign(m, base, j, p);
    if (s) return s > 0;
  }
  throw std::runtime_error("threshold inequality undecided at m = " + std::to_string(m));
}

// Upper bound for m* = 3e / (2 ln(1+eps)), the minimum of f.
unsigned long turning_point_ceiling(const Rational& base, unsigned j) {
  Interval e(kStartPrecision), l(kStartPrecision);
  euler_e(e);
  ln_one_plus(l, base, j, kStartPrecision);
  Real m(kStartPrecision);
  mpfr_mul_ui(m.get(), e.hi.get(), 3, MPFR_RNDU);
  mpfr_div_ui(m.get(), m.get(), 2, MPFR_RNDU);
  mpfr_div(m.get(), m.get(), l.lo.get(), MPFR_RNDU);
  if (!mpfr_fits_ulong_p(m.get(), MPFR_RNDU)) throw InputError("eps is too small for the threshold search");
  return mpfr_get_ui(m.get(), MPFR_RNDU);
}

constexpr unsigned long kFiveE = 14;  // ceil(5e)

unsigned long m_epsilon_power(const Rational& base, unsigned j) {
  if (base <= 1) throw InputError("eps must be positive");
  // f is convex with its minimum at m*, so the failures form one interval of
  // integers; find the first success past m* and walk down to the last failure.
  unsigned long m = std::max(kFiveE, turning_point_ceiling(base, j));
  while (!certified_threshold(m, base, j)) ++m;
  while (m > kFiveE && certified_threshold(m - 1, base, j)) --m;
  if (!certified_threshold(m, base, j) || !certified_threshold(m + 1000, base, j) ||
      (m > kFiveE && certified_threshold(m - 1, base, j)))
    throw std::logic_error("threshold post-condition violated");
  return m;
}

struct ThresholdMemo {
  std::mutex mu;
  std::map<std::pair<std::string, unsigned>, unsigned long> m;
  std::map<std::tuple<std::string, unsigned, unsigned>, unsigned long> n;
};

ThresholdMemo& memo() {
  static ThresholdMemo t;
  return t;
}

unsigned long m_memo(const Rational& base, unsigned j) {
  auto key = std::make_pair(base.get_str(), j);
  {
    std::lock_guard<std::mutex> lock(memo().mu);
    auto it = memo().m.find(key);
    if (it != memo().m.end()) return it->second;
  }
  unsigned long v = m_epsilon_power(base, j);
  std::lock_guard<std::mutex> lock(memo().mu);
  memo().m[key] = v;
  return v;
}

unsigned long n_rec(unsigned c, const Rational& base, unsigned j) {
  if (c == 0) return m_memo(base, j);
  auto key = std::make_tuple(base.get_str(), c, j);
  {
    std::lock_guard<std::mutex> lock(memo().mu);
    auto it = memo().n.find(key);
    if (it != memo().n.end()) return it->second;
  }
  unsigned long v = std::max({n_rec(c - 1, base, j + 1), m_memo(base, j + 1), static_cast<unsigned long>(c)});
  std::lock_guard<std::mutex> lock(memo().mu);
  memo().n[key] = v;
  return v;
}

std::string interval_string(const Interval& x) {
  char* lo = nullptr;
  char* hi = nullptr;
  mpfr_asprintf(&lo, "%.9RDf", x.lo.get());
  mpfr_asprintf(&hi, "%.9RUf", x.hi.get());
  std::string s = std::string("[") + lo + ", " + hi + "]";
  mpfr_free_str(lo);
  mpfr_free_str(hi);
  return s;
}

}  // namespace

bool threshold_inequality(unsigned long m, const Rational& eps) {
  if (eps <= 0) throw InputError("eps must be positive");
  if (m < 3) throw InputError("threshold inequality is only evaluated for m >= 3");
  Rational base = eps + 1;
  base.canonicalize();
  return certified_threshold(m, base, 0);
}

unsigned long m_epsilon(const Rational& eps) {
  if (eps <= 0) throw InputError("eps must be positive");
  Rational base = eps + 1;
  base.canonicalize();
  return m_memo(base, 0);
}

unsigned long n_c_delta(unsigned c, const Rational& delta) {
  if (delta <= 0) throw InputError("delta must be positive");
  Rational base = delta + 1;
  base.canonicalize();
  return n_rec(c, base, 0);
}

namespace {

GammaAnswer gamma_small_d(const PermGroup& g, unsigned d, Budget& budget) {
  BigInt ord = g.order();
  switch (d) {
    case 2:
      return {Tri::kNo, "every group has a trivial section, so no group avoids A2"};
    case 3:
      if (ord % 3 == 0) return {Tri::kNo, "3 divides |G|, so G has a subgroup C3 = A3"};
      return {Tri::kYes, "3 does not divide |G|"};
    case 4:
      if (ord % 12 != 0) return {Tri::kYes, "12 does not divide |G|"};
      return {Tri::kUnknown, "12 divides |G|; A4 sections are not searched"};
    default:
      return in_gamma(g, d, budget);
  }
}

}  // namespace

BoundReport lemma22_check(const PermGroup& g, unsigned d, Budget& budget) {
  if (d < 2) throw InputError("lemma22 needs d >= 2");
  BoundReport r;
  r.name = "lemma22";
  r.params = {{"d", std::to_string(d)}, {"n", std::to_string(g.degree())}};
  BigInt bound = bcp_order_bound(BigInt(d), g.degree());
  r.bound_value = bound.get_str();
  r.measured = g.order().get_str();
  GammaAnswer a = gamma_small_d(g, d, budget);
  if (a.value != Tri::kYes) {
    r.verdict = Verdict::kPreconditionUnmet;
    r.note = "membership not verified: " + a.reason;
    return r;
  }
  r.verdict = g.order() < bound ? Verdict::kHolds : Verdict::kFails;
  return r;
}

namespace {

// Certified ln|G| <= (n-1) ln((1+delta) d / e).
Verdict compare_theorem13(const BigInt& order, std::size_t n, unsigned d, const Rational& delta, BoundReport& r) {
  Rational base = delta + 1;
  base.canonicalize();
  for (mpfr_prec_t p = kStartPrecision; p <= kMaxPrecision; p *= 2) {
    Interval lhs(p), rhs(p), lnd(p);
    ln_int(lhs, order);
    ln_rat(rhs, base, p);
    ln_int(lnd, BigInt(d));
    mpfr_add(rhs.lo.get(), rhs.lo.get(), lnd.lo.get(), MPFR_RNDD);
    mpfr_add(rhs.hi.get(), rhs.hi.get(), lnd.hi.get(), MPFR_RNDU);
    mpfr_sub_ui(rhs.lo.get(), rhs.lo.get(), 1, MPFR_RNDD);
    mpfr_sub_ui(rhs.hi.get(), rhs.hi.get(), 1, MPFR_RNDU);
    unsigned long k = n - 1;
    mpfr_mul_ui(rhs.lo.get(), rhs.lo.get(), k, MPFR_RNDD);
    mpfr_mul_ui(rhs.hi.get(), rhs.hi.get(), k, MPFR_RNDU);
    r.bound_value = "ln bound in " + interval_string(rhs);
    r.measured = "ln|G| in " + interval_string(lhs) + ", |G| = " + order.get_str();
    if (order == 1 && n == 1) return Verdict::kHolds;  // 0 <= 0 exactly
    if (mpfr_lessequal_p(lhs.hi.get(), rhs.lo.get())) return Verdict::kHolds;
    if (mpfr_greater_p(lhs.lo.get(), rhs.hi.get())) return Verdict::kFails;
    // equality would make ((1+delta)d/e)^(n-1) an integer, impossible for n > 1
  }
  return Verdict::kInconclusive;
}

}  // namespace

BoundReport theorem13_check(const PermGroup& g, unsigned c, unsigned d, const Rational& delta, Budget& budget) {
  if (delta <= 0) throw InputError("delta must be positive");
  if (d < 5) throw InputError("theorem13 needs d >= 5");
  BoundReport r;
  r.name = "thm13";
  r.params = {{"c", std::to_string(c)}, {"d", std::to_string(d)}, {"delta", delta.get_str()},
              {"n", std::to_string(g.degree())}};
  unsigned long nc = n_c_delta(c, delta);
  std::ostringstream note;
  if (d < nc) {
    r.verdict = Verdict::kPreconditionUnmet;
    r.note = "d < N(c, delta) = " + std::to_string(nc);
    compare_theorem13(g.order(), g.degree(), d, delta, r);
    return r;
  }
  if (c == 0) {
    GammaAnswer a = in_gamma(g, d, budget);
    if (a.value != Tri::kYes) {
      r.verdict = Verdict::kPreconditionUnmet;
      r.note = "membership of G not verified: " + a.reason;
      return r;
    }
  } else {
    ScanPredicate pred;
    pred.kind = ScanPredicate::Kind::kGamma;
    pred.d = d;
    ScanReport scan = stabilizer_scan(g, c, pred, budget);
    if (scan.verdict != Tri::kYes || !scan.exhaustive) {
      r.verdict = Verdict::kPreconditionUnmet;
      r.note = std::string("c-point stabilizer scan: ") + to_string(scan.verdict) +
               (scan.exhaustive ? "" : " (not exhaustive)");
      return r;
    }
  }
  r.verdict = compare_theorem13(g.order(), g.degree(), d, delta, r);
  r.note = "N(c, delta) = " + std::to_string(nc);
  return r;
}

BoundReport theorem13_sd_probe(unsigned d, const Rational& delta) {
  if (d < 6) throw InputError("the probe needs d >= 6");
  unsigned n = d - 1;
  BoundReport r;
  r.name = "thm13-sd-probe";
  r.params = {{"d", std::to_string(d)}, {"delta", delta.get_str()}, {"n", std::to_string(n)}};
  BigInt order = factorial(n);
  r.verdict = compare_theorem13(order, n, d, delta, r);
  // ratio of the logarithms, rounded to nearest for display only
  Interval lhs(kStartPrecision), rhs(kStartPrecision), lnd(kStartPrecision);
  Rational base = delta + 1;
  base.canonicalize();
  ln_int(lhs, order);
  ln_rat(rhs, base, kStartPrecision);
  ln_int(lnd, BigInt(d));
  Real num(kStartPrecision), den(kStartPrecision);
  mpfr_add(den.get(), rhs.lo.get(), lnd.lo.get(), MPFR_RNDN);
  mpfr_sub_ui(den.get(), den.get(), 1, MPFR_RNDN);
  mpfr_mul_ui(den.get(), den.get(), n - 1, MPFR_RNDN);
  mpfr_div(num.get(), lhs.lo.get(), den.get(), MPFR_RNDN);
  char* s = nullptr;
  mpfr_asprintf(&s, "%.6Rf", num.get());
  r.note = std::string("ln|Sym(") + std::to_string(n) + ")| / ln(bound) ~ " + s;
  mpfr_free_str(s);
  return r;
}

}  // namespace permres
