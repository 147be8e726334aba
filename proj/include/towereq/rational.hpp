#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include "towereq/errors.hpp"

namespace towereq {

// Arbitrary-precision rational, always reduced, denominator always positive.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}  // NOLINT: implicit by design, mirrors integer literals
  Rational(long num, long den);
  explicit Rational(const mpq_class& v);
  explicit Rational(mpz_class num, mpz_class den);

  static Rational parse(const std::string& text);  // "p", "p/q"

  const mpz_class& num() const { return v_.get_num(); }
  const mpz_class& den() const { return v_.get_den(); }
  const mpq_class& raw() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  bool is_negative() const { return sgn(v_) < 0; }
  int sign() const { return sgn(v_); }

  mpz_class floor() const;
  Rational abs() const;
  Rational pow_int(long e) const;  // 0^negative is a domain error

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
  Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }
  Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }
  Rational operator/(const Rational& o) const;
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }

  bool operator==(const Rational& o) const { return mpq_equal(v_.get_mpq_t(), o.v_.get_mpq_t()) != 0; }
  std::strong_ordering operator<=>(const Rational& o) const {
    int c = mpq_cmp(v_.get_mpq_t(), o.v_.get_mpq_t());
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  std::string str() const;  // "2", "-1/2"

 private:
  mpq_class v_;
};

int cmp(const Rational& a, const Rational& b);

// B^z as an exact rational; |z| <= kMagnitudeCap, else a magnitude error.
Rational base_pow(unsigned base, long z);

// z with q == B^z when q is an exact integer power of the base (z may be negative).
std::optional<long> log_base(const Rational& q, unsigned base);

bool is_prime(unsigned n);
void require_prime_base(unsigned base);

}  // namespace towereq
