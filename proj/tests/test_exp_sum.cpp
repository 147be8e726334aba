#include <doctest.h>

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "towereq/pow_num.hpp"

using namespace towereq;

namespace {

ExpSum C(long n, long d = 1) { return ExpSum::constant(2, Rational(n, d)); }

ExpSum tower_exp(const Rational& a, unsigned h) {
  return PowNum::tower(PowNum::atom(2, a), h).exponent();
}

// 256-bit numeric image of a depth-<=2 sum, for oracle comparisons.
double approx(const ExpSum& e);
double approx_chain(const ExpChain& p) {
  double q = p.coeff.num().get_d() / p.coeff.den().get_d();
  return q * std::pow(2.0, approx(*p.inner));
}
double approx(const ExpSum& e) {
  double acc = e.constant_part().num().get_d() / e.constant_part().den().get_d();
  for (const auto& p : e.chains()) acc += approx_chain(p);
  return acc;
}

}  // namespace

TEST_CASE("integer inners fold into the constant") {
  // 1 * 2^(2^1) = 4
  ExpSum e = ExpSum::chain(2, Rational(1), C(1));
  CHECK(e.is_rational());
  CHECK(e.as_rational() == Rational(2));
  CHECK(ExpSum::chain(2, Rational(1), C(2)).as_rational() == Rational(4));
  CHECK(ExpSum::chain(2, Rational(3), C(-2)).as_rational() == Rational(3, 4));
  // -2 * 2^(-2) = -1/2 as an inner: chain(-2, [-2]) folds the inner shift
  ExpSum f = ExpSum::chain(2, Rational(-2), C(-2));
  CHECK(f.as_rational() == Rational(-1, 2));
}

TEST_CASE("fractional inners are normalized to [0,1) with a coefficient shift") {
  // 1 * 2^(5/2) becomes 4 * 2^(1/2)
  ExpSum e = ExpSum::chain(2, Rational(1), C(5, 2));
  REQUIRE(e.chains().size() == 1);
  CHECK(e.constant_part() == Rational(0));
  CHECK(e.chains()[0].coeff == Rational(4));
  CHECK(e.chains()[0].inner->as_rational() == Rational(1, 2));
  // -2 * 2^(-3/2) becomes -1/2 * 2^(1/2)
  ExpSum f = ExpSum::chain(2, Rational(-2), C(-3, 2));
  REQUIRE(f.chains().size() == 1);
  CHECK(f.chains()[0].coeff == Rational(-1, 2));
  CHECK(f.chains()[0].inner->as_rational() == Rational(1, 2));
}

TEST_CASE("equal inners merge and cancellations vanish") {
  ExpSum h = ExpSum::chain(2, Rational(1), C(1, 2));
  ExpSum sum = h + h;
  REQUIRE(sum.chains().size() == 1);
  CHECK(sum.chains()[0].coeff == Rational(2));
  CHECK((h + (-h)).is_zero());
  CHECK((h - h).is_zero());
  // mixed: constant + two mergeable chains
  ExpSum g = C(3) + ExpSum::chain(2, Rational(1, 2), C(1, 2)) +
             ExpSum::chain(2, Rational(3, 2), C(1, 2));
  CHECK(g.constant_part() == Rational(3));
  REQUIRE(g.chains().size() == 1);
  CHECK(g.chains()[0].coeff == Rational(2));
}

TEST_CASE("canonicalization is idempotent and permutation-invariant") {
  std::mt19937_64 rng(123);
  std::uniform_int_distribution<long> num(-4, 4), den(1, 3), inum(-6, 6), iden(1, 4);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<ExpChain> parts;
    int n = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < n; ++i) {
      parts.push_back({Rational(num(rng), den(rng)), share(C(inum(rng), iden(rng)))});
    }
    Rational c(num(rng), den(rng));
    ExpSum a = ExpSum::make(2, c, parts);
    std::shuffle(parts.begin(), parts.end(), rng);
    ExpSum b = ExpSum::make(2, c, parts);
    CHECK(a == b);
    // rebuilding from the canonical pieces is a fixpoint
    ExpSum again = ExpSum::make(2, a.constant_part(), a.chains());
    CHECK(again == a);
  }
}

TEST_CASE("tower exponents match the known ladder for base 2") {
  CHECK(tower_exp(Rational(1), 1).as_rational() == Rational(1));
  CHECK(tower_exp(Rational(1), 3).as_rational() == Rational(4));
  CHECK(tower_exp(Rational(1), 5).as_rational() == Rational(65536));
  // 2^^6 exponent folds to the rational 2^65536
  ExpSum e6 = tower_exp(Rational(1), 6);
  REQUIRE(e6.is_rational());
  CHECK(log_base(*e6.as_rational(), 2) == 65536);
  // 2^^7 exponent stays symbolic: one chain with the folded 2^65536 inner
  ExpSum e7 = tower_exp(Rational(1), 7);
  REQUIRE(e7.chains().size() == 1);
  CHECK(e7.constant_part() == Rational(0));
  CHECK(e7.chains()[0].coeff == Rational(1));
  CHECK(e7.chains()[0].inner->as_rational() == e6.as_rational());
}

TEST_CASE("tower exponent of 1/2 at height 3 is -2^(-1/2)") {
  // 1/2 is the atom 2^(-1); its height-3 tower has exponent -1 * 2^(-2^(-1))
  ExpSum e = tower_exp(Rational(-1), 3);
  REQUIRE(e.chains().size() == 1);
  CHECK(e.constant_part() == Rational(0));
  CHECK(e.chains()[0].coeff == Rational(-1, 2));
  CHECK(e.chains()[0].inner->as_rational() == Rational(1, 2));
  // as a field element of K_2: -2^(-1/2) = -t/2 for t = 2^(1/2)
  REQUIRE(e.embeds_in_radical_field());
  FieldElement fe = e.to_field_element(2);
  CHECK(fe == FieldElement(2, 2, {Rational(0), Rational(-1, 2)}));
  // its square-root-free double: e + e = -2^(1/2) = -t
  FieldElement fe2 = (e + e).to_field_element(2);
  CHECK(fe2 == FieldElement(2, 2, {Rational(0), Rational(-1)}));
}

TEST_CASE("equation exponent reproduces 4*4 != 256 exactly") {
  PowNum alpha = PowNum::atom(2, Rational(1));
  PowNum gamma = PowNum::atom(2, Rational(2));
  // 2^^2 * 2^^2 vs 4^^2: exponents 2 + 2 - 8 = -4
  ExpSum diff = equation_exponent(alpha, alpha, gamma, 2, 2, 2);
  CHECK(diff.as_rational() == Rational(-4));
}

TEST_CASE("mul_monomial distributes, against a numeric oracle") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<long> num(-3, 3), den(1, 3);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<ExpChain> parts{{Rational(num(rng), den(rng)), share(C(num(rng), den(rng)))},
                                {Rational(num(rng), den(rng)), share(C(num(rng), den(rng)))}};
    std::erase_if(parts, [](const ExpChain& p) { return p.coeff.is_zero(); });
    ExpSum e = ExpSum::make(2, Rational(num(rng), den(rng)), parts);
    Rational q(num(rng), den(rng));
    if (q.is_zero()) continue;
    ExpSum f = C(num(rng), den(rng));
    ExpSum got = e.mul_monomial(q, f);
    double want = approx(e) * (q.num().get_d() / q.den().get_d()) * std::pow(2.0, approx(f));
    CHECK(std::abs(approx(got) - want) <= 1e-9 * (1.0 + std::abs(want)));
  }
}

TEST_CASE("to_field_element rejects unsupported shapes") {
  // depth-2 inner
  ExpSum deep = ExpSum::chain(2, Rational(1), ExpSum::chain(2, Rational(1), C(1, 2)));
  CHECK_FALSE(deep.embeds_in_radical_field());
  CHECK_THROWS_AS(deep.to_field_element(2), Error);
  // wrong degree for the inner denominator
  ExpSum half = ExpSum::chain(2, Rational(1), C(1, 2));
  CHECK_THROWS_AS(half.to_field_element(3), Error);
  CHECK(half.radical_field_degree() == 2);
}

TEST_CASE("oversized integer inners stay symbolic and compare structurally") {
  // inner 2^65536 exceeds the fold cap as an exponent of B
  ExpSum big = tower_exp(Rational(1), 7);
  CHECK_FALSE(big.is_rational());
  CHECK_FALSE(big.embeds_in_radical_field());
  CHECK(big == tower_exp(Rational(1), 7));
  CHECK_FALSE(big == tower_exp(Rational(1), 6));
  // scalar multiples keep the inner shared and canonical
  ExpSum twice = big + big;
  REQUIRE(twice.chains().size() == 1);
  CHECK(twice.chains()[0].coeff == Rational(2));
}

TEST_CASE("base mismatch is rejected") {
  CHECK_THROWS_AS(C(1) + ExpSum::constant(3, Rational(1)), Error);
}
