#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "towereq/rational.hpp"

namespace towereq {

// Element of Q(B^(1/N)), stored as coordinates over the power basis
// 1, t, ..., t^(N-1) with t = B^(1/N). For prime B, x^N - B is irreducible
// (Eisenstein), so coordinates are unique and coordinatewise equality is
// equality of real values.
class FieldElement {
 public:
  FieldElement(unsigned base, unsigned degree, std::vector<Rational> coords);

  static FieldElement zero(unsigned base, unsigned degree);
  static FieldElement from_rational(unsigned base, unsigned degree, const Rational& q);
  // t^p for any integer p, reduced via t^N = B.
  static FieldElement theta_power(unsigned base, unsigned degree, long p);

  unsigned base() const { return base_; }
  unsigned degree() const { return degree_; }
  const std::vector<Rational>& coords() const { return coords_; }
  const Rational& coord(unsigned i) const;

  bool is_zero() const;
  std::optional<Rational> as_rational() const;
  // x = u * t^j with exactly one nonzero coordinate; nullopt for zero or mixed sums.
  std::optional<std::pair<unsigned, Rational>> monomial_decompose() const;

  // Re-express in Q(B^(1/M)) for M a multiple of the current degree.
  FieldElement promote(unsigned new_degree) const;

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator-() const;
  FieldElement scalar_mul(const Rational& q) const;
  bool operator==(const FieldElement& o) const;

  std::string str() const;

 private:
  void require_compatible(const FieldElement& o) const;

  unsigned base_;
  unsigned degree_;
  std::vector<Rational> coords_;
};

// Promote both arguments to the lcm of their degrees.
std::pair<FieldElement, FieldElement> aligned(const FieldElement& x, const FieldElement& y);

}  // namespace towereq
