#pragma once

#include "towereq/exp_sum.hpp"

namespace towereq {

// Positive real B^E for a fixed prime base B and exponent sum E.
class PowNum {
 public:
  static PowNum atom(unsigned base, const Rational& q);
  static PowNum one(unsigned base);
  static PowNum from_exponent(ExpSum e);
  // x self-exponentiated to the given height: height 1 is x, height j+1 is
  // x raised to the height-j value. Heights start at 1.
  static PowNum tower(const PowNum& x, unsigned height);

  PowNum operator*(const PowNum& o) const;
  PowNum pow(const PowNum& y) const;  // x^(value of y)

  unsigned base() const { return exp_.base(); }
  const ExpSum& exponent() const { return exp_; }
  bool operator==(const PowNum& o) const { return exp_ == o.exp_; }

 private:
  explicit PowNum(ExpSum e) : exp_(std::move(e)) {}
  ExpSum exp_;
};

// Exponent of lhs/rhs for (alpha tower k) * (beta tower m) = (gamma tower n),
// i.e. the quantity whose vanishing makes the equation hold. Heights >= 2.
ExpSum equation_exponent(const PowNum& alpha, const PowNum& beta, const PowNum& gamma, unsigned k,
                         unsigned m, unsigned n);

}  // namespace towereq
