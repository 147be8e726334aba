#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "towereq/exp_sum.hpp"
#include "towereq/pow_num.hpp"

namespace towereq {

struct EvalLimits {
  // Exponent arguments with |x| beyond this bound are refused rather than
  // evaluated, so oversized towers surface as magnitude errors.
  long max_exponent = kMagnitudeCap;
};

// Closed interval with MPFR endpoints; every operation rounds lo down and
// hi up, so the true value never escapes.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec);
  Interval(const Interval& o);
  Interval(Interval&& o) noexcept;
  Interval& operator=(Interval o) noexcept;
  ~Interval();

  static Interval from_rational(const Rational& q, mpfr_prec_t prec);

  mpfr_prec_t precision() const { return prec_; }
  bool is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }
  bool contains_zero() const;
  bool contains(const Rational& q) const;
  // -1 or 1 when the whole interval is on one side of zero, else 0.
  int sign() const;
  double lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  // True when hi - lo < 2^(-k) * max(1, |interval|).
  bool relative_width_below(long k) const;
  // True when the other interval contains this one.
  bool inside(const Interval& o) const;

  std::string lo_str(size_t digits) const;
  std::string hi_str(size_t digits) const;

  Interval add(const Interval& o) const;
  Interval mul_rational(const Rational& q) const;

  friend Interval pow_base(unsigned base, const Interval& x, mpfr_prec_t prec,
                           const EvalLimits& lim);

 private:
  void require_finite() const;

  mpfr_t lo_, hi_;
  mpfr_prec_t prec_;
};

Interval eval_exponent(const ExpSum& e, mpfr_prec_t bits, const EvalLimits& lim = {});
Interval eval_value(const PowNum& x, mpfr_prec_t bits, const EvalLimits& lim = {});

enum class SignResult { negative, undetermined, positive };

// Sign of the real value of e, by outward-rounded evaluation with doubling
// precision up to max_bits. Sums whose terms all share a sign are resolved
// structurally, without evaluation.
SignResult sign_of(const ExpSum& e, mpfr_prec_t max_bits, const EvalLimits& lim = {});

}  // namespace towereq
