#include "towereq/rational.hpp"

#include <cctype>

namespace towereq {

Rational::Rational(long num, long den) {
  if (den == 0) fail(errc::domain, "zero denominator");
  v_ = mpq_class(num, den);
  v_.canonicalize();
}

Rational::Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

Rational::Rational(mpz_class num, mpz_class den) {
  if (sgn(den) == 0) fail(errc::domain, "zero denominator");
  v_ = mpq_class(std::move(num), std::move(den));
  v_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
  if (text.empty()) fail(errc::parse, "empty rational");
  for (size_t i = 0; i < text.size(); ++i) {
    char ch = text[i];
    bool ok = std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' ||
              (ch == '-' && (i == 0 || text[i - 1] == '/'));
    if (!ok) fail(errc::parse, "bad rational '" + text + "'");
  }
  mpq_class v;
  if (v.set_str(text, 10) != 0) fail(errc::parse, "bad rational '" + text + "'");
  if (v.get_den() == 0) fail(errc::parse, "zero denominator in '" + text + "'");
  return Rational(v);
}

Rational Rational::operator/(const Rational& o) const {
  if (o.is_zero()) fail(errc::domain, "division by zero");
  return Rational(mpq_class(v_ / o.v_));
}

mpz_class Rational::floor() const {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
  return q;
}

Rational Rational::abs() const { return is_negative() ? -*this : *this; }

Rational Rational::pow_int(long e) const {
  if (e == 0) return Rational(1);
  if (is_zero()) {
    if (e < 0) fail(errc::domain, "0 to a negative power");
    return Rational(0);
  }
  mpz_class n, d;
  unsigned long ue = static_cast<unsigned long>(e < 0 ? -e : e);
  mpz_pow_ui(n.get_mpz_t(), v_.get_num().get_mpz_t(), ue);
  mpz_pow_ui(d.get_mpz_t(), v_.get_den().get_mpz_t(), ue);
  if (e < 0) std::swap(n, d);
  return Rational(std::move(n), std::move(d));
}

std::string Rational::str() const { return v_.get_str(); }

int cmp(const Rational& a, const Rational& b) {
  return mpq_cmp(a.raw().get_mpq_t(), b.raw().get_mpq_t());
}

Rational base_pow(unsigned base, long z) {
  if (base < 2) fail(errc::base_not_supported, "base must be at least 2");
  if (z > kMagnitudeCap || z < -kMagnitudeCap) fail(errc::magnitude, "exponent exceeds fold cap");
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), base, static_cast<unsigned long>(z < 0 ? -z : z));
  if (z < 0) return Rational(mpz_class(1), std::move(p));
  return Rational(std::move(p), mpz_class(1));
}

std::optional<long> log_base(const Rational& q, unsigned base) {
  if (q.sign() <= 0) return std::nullopt;
  const mpz_class& num = q.num();
  const mpz_class& den = q.den();
  mpz_class b(base);
  auto pure_power = [&](const mpz_class& v) -> std::optional<long> {
    if (v == 1) return 0;
    mpz_class rem;
    mp_bitcnt_t e = mpz_remove(rem.get_mpz_t(), v.get_mpz_t(), b.get_mpz_t());
    if (rem != 1) return std::nullopt;
    return static_cast<long>(e);
  };
  if (den == 1) return pure_power(num);
  if (num == 1) {
    auto e = pure_power(den);
    if (e) return -*e;
    return std::nullopt;
  }
  return std::nullopt;
}

bool is_prime(unsigned n) {
  return mpz_probab_prime_p(mpz_class(n).get_mpz_t(), 40) != 0;
}

void require_prime_base(unsigned base) {
  if (!is_prime(base)) {
    fail(errc::base_not_supported, "base " + std::to_string(base) + " is not prime");
  }
}

}  // namespace towereq
