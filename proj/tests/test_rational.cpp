#include <doctest.h>

#include <random>

#include "towereq/rational.hpp"

using namespace towereq;

TEST_CASE("rationals are always reduced with positive denominator") {
  Rational q(6, -4);
  CHECK(q.num() == -3);
  CHECK(q.den() == 2);
  CHECK(q.str() == "-3/2");
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(10, 5).is_integer());
}

TEST_CASE("rational arithmetic identities") {
  CHECK(Rational(1, 2) + Rational(1, 2) == Rational(1));
  CHECK(Rational(-1) * Rational(1, 2) == Rational(-1, 2));
  CHECK(Rational(2).pow_int(3) == Rational(8));
  CHECK(Rational(2).pow_int(-2) == Rational(1, 4));
  CHECK(Rational(-1, 2).abs() == Rational(1, 2));
  CHECK(Rational(-3, 2).floor() == -2);
  CHECK(Rational(3, 2).floor() == 1);
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(cmp(Rational(5, 3), Rational(5, 3)) == 0);
}

TEST_CASE("division by zero and 0^negative are domain errors") {
  CHECK_THROWS_AS(Rational(1) / Rational(0), Error);
  CHECK_THROWS_AS(Rational(1, 0), Error);
  CHECK_THROWS_AS(Rational(0).pow_int(-1), Error);
  try {
    (void)(Rational(1) / Rational(0));
  } catch (const Error& e) {
    CHECK(e.code() == errc::domain);
  }
}

TEST_CASE("parse accepts p and p/q and round-trips str") {
  CHECK(Rational::parse("-1/2") == Rational(-1, 2));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK(Rational::parse("4/6") == Rational(2, 3));
  CHECK_THROWS_AS(Rational::parse("1/0"), Error);
  CHECK_THROWS_AS(Rational::parse(""), Error);
  CHECK_THROWS_AS(Rational::parse("1.5"), Error);
  CHECK_THROWS_AS(Rational::parse("2/"), Error);

  std::mt19937_64 rng(20250819);
  std::uniform_int_distribution<long> num(-5000, 5000), den(1, 900);
  for (int i = 0; i < 500; ++i) {
    Rational q(num(rng), den(rng));
    CHECK(Rational::parse(q.str()) == q);
  }
}

TEST_CASE("base_pow computes exact signed powers of the base") {
  CHECK(base_pow(2, 10) == Rational(1024));
  CHECK(base_pow(2, -3) == Rational(1, 8));
  CHECK(base_pow(3, 0) == Rational(1));
  CHECK_THROWS_AS(base_pow(2, kMagnitudeCap + 1), Error);
}

TEST_CASE("log_base inverts base_pow and rejects non-powers") {
  for (long z : {-30L, -1L, 0L, 1L, 17L, 100L}) {
    auto back = log_base(base_pow(2, z), 2);
    REQUIRE(back.has_value());
    CHECK(*back == z);
  }
  CHECK_FALSE(log_base(Rational(3), 2).has_value());
  CHECK_FALSE(log_base(Rational(6), 2).has_value());
  CHECK_FALSE(log_base(Rational(-4), 2).has_value());
  CHECK_FALSE(log_base(Rational(0), 2).has_value());
  CHECK_FALSE(log_base(Rational(3, 2), 2).has_value());
  CHECK(log_base(Rational(243), 3) == 5);
}

TEST_CASE("primality guard for the base") {
  CHECK(is_prime(2));
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(4));
  CHECK_THROWS_AS(require_prime_base(6), Error);
  try {
    require_prime_base(6);
  } catch (const Error& e) {
    CHECK(e.code() == errc::base_not_supported);
  }
}
