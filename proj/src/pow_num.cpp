#include "towereq/pow_num.hpp"

namespace towereq {

PowNum PowNum::atom(unsigned base, const Rational& q) {
  return PowNum(ExpSum::constant(base, q));
}

PowNum PowNum::one(unsigned base) { return PowNum(ExpSum(base)); }

PowNum PowNum::from_exponent(ExpSum e) { return PowNum(std::move(e)); }

PowNum PowNum::tower(const PowNum& x, unsigned height) {
  if (height == 0) fail(errc::height, "tower height must be at least 1");
  ExpSum e = x.exp_;
  for (unsigned j = 2; j <= height; ++j) e = x.exp_.mul_monomial(Rational(1), e);
  return PowNum(std::move(e));
}

PowNum PowNum::operator*(const PowNum& o) const { return PowNum(exp_ + o.exp_); }

PowNum PowNum::pow(const PowNum& y) const {
  return PowNum(exp_.mul_monomial(Rational(1), y.exp_));
}

ExpSum equation_exponent(const PowNum& alpha, const PowNum& beta, const PowNum& gamma, unsigned k,
                         unsigned m, unsigned n) {
  if (k < 2 || m < 2 || n < 2) fail(errc::height, "instance heights must be at least 2");
  ExpSum lhs = PowNum::tower(alpha, k).exponent() + PowNum::tower(beta, m).exponent();
  return lhs - PowNum::tower(gamma, n).exponent();
}

}  // namespace towereq
