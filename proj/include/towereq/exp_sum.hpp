#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "towereq/field_element.hpp"
#include "towereq/rational.hpp"

namespace towereq {

class ExpSum;
using ExpSumPtr = std::shared_ptr<const ExpSum>;

// One term q * B^(inner). coeff is never zero.
struct ExpChain {
  Rational coeff;
  ExpSumPtr inner;
};

// Exponent sum c + sum_i q_i * B^(E_i) over a fixed prime base B, with rational
// c, q_i and nested exponent sums E_i. Every instance is canonical:
//   - chains are merged on equal inners, zero coefficients dropped, and the
//     list sorted under a total structural order;
//   - an integer-valued inner z with |z| <= kMagnitudeCap is folded away,
//     q*B^z joining the constant; larger integers stay symbolic;
//   - a fractional inner has its constant reduced mod 1, the shifted integer
//     part z moving into the coefficient as a factor B^z (skipped only when
//     |z| exceeds kMagnitudeCap).
// With every inner constant in [0,1), two canonical sums of depth <= 1 are
// equal as reals only when structurally identical.
class ExpSum {
 public:
  explicit ExpSum(unsigned base);
  static ExpSum constant(unsigned base, const Rational& c);
  static ExpSum chain(unsigned base, const Rational& coeff, const ExpSum& inner);
  // Canonicalizing assembler; parts' inners must already be canonical.
  static ExpSum make(unsigned base, Rational c, std::vector<ExpChain> parts);

  unsigned base() const { return base_; }
  const Rational& constant_part() const { return constant_; }
  const std::vector<ExpChain>& chains() const { return chains_; }
  int depth() const { return depth_; }

  bool is_zero() const { return chains_.empty() && constant_.is_zero(); }
  bool is_rational() const { return chains_.empty(); }
  std::optional<Rational> as_rational() const;
  // True when every chain inner is a fractional rational, i.e. the sum lives
  // in Q(B^(1/N)) for N the lcm of the inner denominators, and N stays within
  // the fold cap.
  bool embeds_in_radical_field() const;
  unsigned radical_field_degree() const;

  ExpSum operator+(const ExpSum& o) const;
  ExpSum operator-(const ExpSum& o) const;
  ExpSum operator-() const;
  ExpSum scalar_mul(const Rational& q) const;
  // this * (q * B^F), distributing over the terms.
  ExpSum mul_monomial(const Rational& q, const ExpSum& f) const;

  FieldElement to_field_element(unsigned degree) const;

  bool operator==(const ExpSum& o) const { return structural_cmp(*this, o) == 0; }
  friend int structural_cmp(const ExpSum& a, const ExpSum& b);

  std::string str() const;

 private:
  ExpSum(unsigned base, Rational c, std::vector<ExpChain> chains, int depth);

  unsigned base_;
  Rational constant_;
  std::vector<ExpChain> chains_;
  int depth_;
};

ExpSumPtr share(ExpSum e);

}  // namespace towereq
