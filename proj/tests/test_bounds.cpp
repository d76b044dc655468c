#include <cmath>
#include <fstream>

#include "json.hpp"

#include "doctest.h"
#include "helpers.hpp"
#include "permres/bounds.hpp"
#include "permres/constructions.hpp"
#include "permres/errors.hpp"

using namespace permres;
using testing_support::pg;

namespace {

nlohmann::json golden() {
  std::ifstream in(std::string(PERMRES_TEST_DATA) + "/threshold_golden.json");
  REQUIRE(in.good());
  return nlohmann::json::parse(in);
}

}  // namespace

TEST_CASE("closed-form bounds") {
  CHECK(prod_bound(36, 2, 6) == 7);
  CHECK(diag_bound(2, 60) == 4);
  CHECK(diag_bound(BigInt("1000000"), 60) == 6);
  CHECK(faw_bound(1451520, 36) == 7);
  CHECK(partition_bound(6, 2) == 6);
  CHECK(partition_bound(64, 32) == 8);
  CHECK(subsets_bound(5, 2) == 4);
  CHECK(bcp_order_bound(6, 5) == 1296);
  CHECK_THROWS_AS(prod_bound(1, 2, 0), InputError);
  CHECK_THROWS_AS(partition_bound(7, 2), InputError);
  auto r = formula_report("faw_bound", {{"order", "1451520"}, {"n", "36"}}, BigInt(6));
  CHECK(r.bound_value == "7");
  CHECK(r.verdict == Verdict::kHolds);
  CHECK(formula_report("diag_bound", {{"k", "2"}, {"t", "60"}}, BigInt(5)).verdict == Verdict::kFails);
  CHECK_THROWS_AS(formula_report("nope", {}), InputError);
  CHECK_THROWS_AS(formula_report("faw_bound", {{"order", "10"}}), InputError);
}

TEST_CASE("ceil log brackets on random inputs") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 500; ++i) {
    BigInt b = 2 + rng() % 50, x = 1 + rng() % 100000;
    unsigned long t = faw_bound(x, b) - 3;
    CHECK(ipow(b, static_cast<unsigned>(t)) >= x);
    if (t > 0) CHECK(ipow(b, static_cast<unsigned>(t - 1)) < x);
  }
}

TEST_CASE("threshold inequality") {
  CHECK_FALSE(threshold_inequality(20, Rational(1)));
  CHECK(threshold_inequality(21, Rational(1)));
  // plain double evaluation agrees far from the boundary
  for (unsigned long m : {14UL, 15UL, 40UL, 100UL, 500UL}) {
    double f = (m / std::exp(1.0) - 1) * std::log(2.0) - 1.5 * std::log(static_cast<double>(m));
    CHECK(threshold_inequality(m, Rational(1)) == (f >= 0));
  }
  CHECK_THROWS_AS(threshold_inequality(20, Rational(0)), InputError);
}

TEST_CASE("m_epsilon matches the frozen oracle") {
  auto g = golden();
  for (auto& [eps, value] : g["m_epsilon"].items()) {
    CAPTURE(eps);
    Rational e = parse_rational(eps);
    unsigned long m = m_epsilon(e);
    CHECK(m == value.get<unsigned long>());
    CHECK(m >= 14);
    CHECK(threshold_inequality(m, e));
    CHECK(threshold_inequality(m + 1000, e));
    if (m > 14) CHECK_FALSE(threshold_inequality(m - 1, e));
  }
  CHECK(m_epsilon(Rational(100)) == 14);
}

TEST_CASE("n_c_delta matches the frozen recursion") {
  auto g = golden();
  for (auto& [delta, row] : g["n_c_delta"].items()) {
    Rational d = parse_rational(delta);
    CHECK(n_c_delta(0, d) == m_epsilon(d));
    for (unsigned c = 0; c <= 4; ++c) {
      CAPTURE(delta);
      CAPTURE(c);
      unsigned long n = n_c_delta(c, d);
      CHECK(n == row[std::to_string(c)].get<unsigned long>());
      CHECK(n >= c);
      if (c > 0) CHECK(n >= n_c_delta(c - 1, d));
    }
  }
}

TEST_CASE("lemma22 checks") {
  auto s5 = pg(5, {"(1 2 3 4 5)", "(1 2)"});
  auto r = lemma22_check(s5, 6);
  CHECK(r.verdict == Verdict::kHolds);
  CHECK(r.bound_value == "1296");
  CHECK(r.measured == "120");
  auto a5 = pg(5, {"(1 2 3)", "(1 2 3 4 5)"});
  CHECK(lemma22_check(a5, 5).verdict == Verdict::kPreconditionUnmet);
  CHECK(lemma22_check(s5, 2).verdict == Verdict::kPreconditionUnmet);
  auto c7 = pg(7, {"(1 2 3 4 5 6 7)"});
  CHECK(lemma22_check(c7, 3).verdict == Verdict::kHolds);
  CHECK(lemma22_check(pg(3, {"(1 2 3)"}), 3).verdict == Verdict::kPreconditionUnmet);
  CHECK(lemma22_check(pg(4, {"(1 2)(3 4)", "(1 3)(2 4)"}), 4).verdict == Verdict::kHolds);
}

TEST_CASE("theorem13 checks") {
  Rational one(1);
  PermGroup trivial(GeneratedGroup(20, {}));
  CHECK(theorem13_check(trivial, 0, 21, one).verdict == Verdict::kHolds);
  CHECK(theorem13_check(trivial, 0, 20, one).verdict == Verdict::kPreconditionUnmet);
  PermGroup s14(GeneratedGroup(14, symmetric_generators(14, false)));
  CHECK(theorem13_check(s14, 1, 22, Rational(2)).verdict == Verdict::kHolds);
  CHECK(theorem13_check(s14, 0, 14, Rational(2)).verdict == Verdict::kPreconditionUnmet);
  auto probe = theorem13_sd_probe(21, one);
  CHECK(probe.verdict == Verdict::kHolds);
  CHECK(probe.note.find("Sym(20)") != std::string::npos);
  CHECK_THROWS_AS(theorem13_check(trivial, 0, 21, Rational(0)), InputError);
}
