#pragma once

#include <vector>

#include "towereq/interval.hpp"
#include "towereq/pow_num.hpp"
#include "towereq/verdict.hpp"

namespace towereq {

struct EquationInstance {
  unsigned base = 2;
  Rational a, b, c;  // exponents of the three power atoms
  unsigned k = 2, m = 2, n = 2;
};

// Is the real value of e zero? Exact stages first, outward-rounded evaluation
// last; Unknown only when the interval budget runs out.
Verdict decide_zero(const ExpSum& e, mpfr_prec_t max_bits = 256, const EvalLimits& lim = {});

// Does q*B^e equal q2*B^e2? Both inners must have depth <= 1. Coefficients
// must be nonzero.
Verdict decide_chain_pair(const Rational& q, const ExpSum& e, const Rational& q2,
                          const ExpSum& e2);

// All rationals c with x = c * B^c, in increasing order.
std::vector<Rational> recognize_monomial(const FieldElement& x);

// All rationals c such that gamma = B^c closes the instance, for the solvable
// right-hand heights. Sorted increasing.
std::vector<Rational> solve_gamma(unsigned base, const Rational& a, const Rational& b, unsigned k,
                                  unsigned m, unsigned n);

// A factor is 1 and the other two towers match levelwise.
bool is_trivial_solution(const EquationInstance& inst);

Verdict verify_instance(const EquationInstance& inst, mpfr_prec_t max_bits = 256,
                        const EvalLimits& lim = {});

}  // namespace towereq
