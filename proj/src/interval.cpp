#include "towereq/interval.hpp"

#include <algorithm>

namespace towereq {

namespace {

constexpr mpfr_prec_t kMinBits = 16;

void require_bits(mpfr_prec_t bits) {
  if (bits < kMinBits) fail(errc::domain, "precision below 16 bits");
}

}  // namespace

Interval::Interval(mpfr_prec_t prec) : prec_(prec) {
  require_bits(prec);
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& o) : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

Interval& Interval::operator=(Interval o) noexcept {
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  std::swap(prec_, o.prec_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::from_rational(const Rational& q, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_q(r.lo_, q.raw().get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, q.raw().get_mpq_t(), MPFR_RNDU);
  return r;
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

bool Interval::contains(const Rational& q) const {
  return mpfr_cmp_q(lo_, q.raw().get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.raw().get_mpq_t()) >= 0;
}

int Interval::sign() const {
  if (mpfr_sgn(lo_) > 0) return 1;
  if (mpfr_sgn(hi_) < 0) return -1;
  return 0;
}

bool Interval::relative_width_below(long k) const {
  mpfr_t width, scale;
  mpfr_init2(width, prec_ + 64);
  mpfr_init2(scale, prec_ + 64);
  mpfr_sub(width, hi_, lo_, MPFR_RNDU);
  // scale = max(1, min(|lo|, |hi|)), a lower bound on max(1, |value|)
  if (contains_zero()) {
    mpfr_set_ui(scale, 1, MPFR_RNDD);
  } else {
    if (mpfr_cmpabs(lo_, hi_) <= 0) mpfr_abs(scale, lo_, MPFR_RNDD);
    else mpfr_abs(scale, hi_, MPFR_RNDD);
    if (mpfr_cmp_ui(scale, 1) < 0) mpfr_set_ui(scale, 1, MPFR_RNDD);
  }
  mpfr_mul_2si(scale, scale, -k, MPFR_RNDD);
  bool ok = mpfr_cmp(width, scale) < 0;
  mpfr_clear(width);
  mpfr_clear(scale);
  return ok;
}

bool Interval::inside(const Interval& o) const {
  return mpfr_cmp(o.lo_, lo_) <= 0 && mpfr_cmp(hi_, o.hi_) <= 0;
}

void Interval::require_finite() const {
  if (mpfr_number_p(lo_) == 0 || mpfr_number_p(hi_) == 0) {
    fail(errc::magnitude, "evaluation overflowed the float range");
  }
}

Interval Interval::add(const Interval& o) const {
  Interval r(prec_);
  mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
  r.require_finite();
  return r;
}

Interval Interval::mul_rational(const Rational& q) const {
  Interval r(prec_);
  if (q.sign() >= 0) {
    mpfr_mul_q(r.lo_, lo_, q.raw().get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(r.hi_, hi_, q.raw().get_mpq_t(), MPFR_RNDU);
  } else {
    mpfr_mul_q(r.lo_, hi_, q.raw().get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(r.hi_, lo_, q.raw().get_mpq_t(), MPFR_RNDU);
  }
  r.require_finite();
  return r;
}

Interval pow_base(unsigned base, const Interval& x, mpfr_prec_t prec, const EvalLimits& lim) {
  mpfr_t cap;
  mpfr_init2(cap, 64);
  mpfr_set_si(cap, lim.max_exponent, MPFR_RNDN);
  bool over = mpfr_cmpabs(x.lo_, cap) > 0 || mpfr_cmpabs(x.hi_, cap) > 0;
  mpfr_clear(cap);
  if (over) fail(errc::magnitude, "exponent magnitude beyond cap");
  Interval r(prec);
  mpfr_ui_pow(r.lo_, base, x.lo_, MPFR_RNDD);
  mpfr_ui_pow(r.hi_, base, x.hi_, MPFR_RNDU);
  r.require_finite();
  return r;
}

namespace {

// mpfr_get_str yields digits and a base-10 exponent with value 0.DDD * 10^e.
std::string format_endpoint(const mpfr_t v, size_t digits, mpfr_rnd_t rnd) {
  if (mpfr_zero_p(v)) return "0";
  if (mpfr_integer_p(v) && mpfr_get_exp(v) <= 133) {
    mpz_class z;
    mpfr_get_z(z.get_mpz_t(), v, MPFR_RNDN);
    return z.get_str();
  }
  mpfr_exp_t e = 0;
  char* raw = mpfr_get_str(nullptr, &e, 10, digits, v, rnd);
  std::string s(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (!s.empty() && s[0] == '-') {
    sign = "-";
    s.erase(0, 1);
  }
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  if (e >= -3 && e <= 12) {
    std::string out;
    long pe = static_cast<long>(e);
    if (pe <= 0) {
      out = "0." + std::string(static_cast<size_t>(-pe), '0') + s;
    } else if (static_cast<size_t>(pe) >= s.size()) {
      out = s + std::string(static_cast<size_t>(pe) - s.size(), '0');
    } else {
      out = s.substr(0, static_cast<size_t>(pe)) + "." + s.substr(static_cast<size_t>(pe));
    }
    return sign + out;
  }
  std::string mant = s.substr(0, 1) + (s.size() > 1 ? "." + s.substr(1) : "");
  return sign + mant + "e" + std::to_string(static_cast<long>(e) - 1);
}

}  // namespace

std::string Interval::lo_str(size_t digits) const { return format_endpoint(lo_, digits, MPFR_RNDD); }

std::string Interval::hi_str(size_t digits) const { return format_endpoint(hi_, digits, MPFR_RNDU); }

Interval eval_exponent(const ExpSum& e, mpfr_prec_t bits, const EvalLimits& lim) {
  require_bits(bits);
  Interval acc = Interval::from_rational(e.constant_part(), bits);
  for (const auto& p : e.chains()) {
    Interval inner = eval_exponent(*p.inner, bits, lim);
    acc = acc.add(pow_base(e.base(), inner, bits, lim).mul_rational(p.coeff));
  }
  return acc;
}

Interval eval_value(const PowNum& x, mpfr_prec_t bits, const EvalLimits& lim) {
  require_bits(bits);
  return pow_base(x.base(), eval_exponent(x.exponent(), bits, lim), bits, lim);
}

SignResult sign_of(const ExpSum& e, mpfr_prec_t max_bits, const EvalLimits& lim) {
  require_bits(max_bits);
  if (e.is_zero()) return SignResult::undetermined;
  int cs = e.constant_part().sign();
  bool all_nonneg = cs >= 0;
  bool all_nonpos = cs <= 0;
  for (const auto& p : e.chains()) {
    if (p.coeff.sign() > 0) all_nonpos = false;
    else all_nonneg = false;
  }
  // every chain value B^(...) is positive, so a signed constant cannot flip a
  // same-signed chain sum
  if (all_nonneg) return SignResult::positive;
  if (all_nonpos) return SignResult::negative;

  for (mpfr_prec_t bits = std::min<mpfr_prec_t>(64, max_bits);; bits = std::min(bits * 2, max_bits)) {
    try {
      Interval v = eval_exponent(e, bits, lim);
      if (v.sign() > 0) return SignResult::positive;
      if (v.sign() < 0) return SignResult::negative;
    } catch (const Error& err) {
      if (err.code() != errc::magnitude) throw;
      return SignResult::undetermined;
    }
    if (bits >= max_bits) return SignResult::undetermined;
  }
}

}  // namespace towereq
