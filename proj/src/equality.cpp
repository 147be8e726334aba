#include "towereq/equality.hpp"

#include <algorithm>

namespace towereq {

namespace {

bool inner_is_fraction(const ExpChain& ch) {
  auto r = ch.inner->as_rational();
  return r && !r->is_integer();
}

// Exact verdict for oversized-integer chains, where B^z cannot be written out.
// d is rational-valued; decide d == zt without materializing the huge powers.
Verdict compare_oversized(unsigned base, const ExpSum& d, long zt) {
  Rational c0 = d.constant_part() - Rational(zt);
  const auto& dch = d.chains();
  if (dch.size() == 1) {
    // q1 * B^(z1) == -c0 exactly when -c0/q1 is the z1-th power of the base
    Rational target = (Rational(0) - c0) / dch[0].coeff;
    auto ze = log_base(target, base);
    const mpz_class& z1 = dch[0].inner->as_rational()->num();
    bool eq = ze.has_value() && mpz_cmp_si(z1.get_mpz_t(), *ze) == 0;
    return {eq ? Outcome::equal : Outcome::not_equal, Method::monomial_normal_form,
            "oversized power compared through its base exponent"};
  }
  std::vector<const ExpChain*> pos, neg;
  for (const auto& ch : dch) {
    (ch.inner->as_rational()->sign() > 0 ? pos : neg).push_back(&ch);
  }
  Rational neg_abs(0), c0_abs = c0.abs();
  for (const auto* ch : neg) neg_abs += ch->coeff.abs();
  if (!pos.empty()) {
    const ExpChain* top = pos[0];
    for (const auto* ch : pos) {
      if (ch->inner->as_rational()->num() > top->inner->as_rational()->num()) top = ch;
    }
    Rational others(0);
    for (const auto* ch : pos) {
      if (ch != top) others += ch->coeff.abs();
    }
    // terms below the top are at least a factor B smaller, so the top term
    // wins once B*|q_top| clears the other magnitudes
    Rational slack = Rational(static_cast<long>(base)) * top->coeff.abs() - others - c0_abs - neg_abs;
    if (slack.sign() > 0) {
      return {Outcome::not_equal, Method::monomial_normal_form, "dominant oversized term"};
    }
    return {Outcome::unknown, Method::monomial_normal_form,
            "oversized terms resist exact ordering"};
  }
  // every oversized exponent is hugely negative, so those terms are below
  // B^(-cap) in magnitude
  if (!c0.is_zero()) {
    if (c0_abs > neg_abs * base_pow(base, -kMagnitudeCap)) {
      return {Outcome::not_equal, Method::monomial_normal_form,
              "constant dominates vanishing oversized terms"};
    }
    return {Outcome::unknown, Method::monomial_normal_form,
            "oversized terms resist exact ordering"};
  }
  bool all_pos = true, all_neg = true;
  for (const auto* ch : neg) {
    if (ch->coeff.sign() > 0) all_neg = false;
    else all_pos = false;
  }
  if (all_pos || all_neg) {
    return {Outcome::not_equal, Method::monomial_normal_form, "same-signed oversized terms"};
  }
  return {Outcome::unknown, Method::monomial_normal_form, "oversized terms resist exact ordering"};
}

}  // namespace

Verdict decide_chain_pair(const Rational& q, const ExpSum& e, const Rational& q2,
                          const ExpSum& e2) {
  if (q.is_zero() || q2.is_zero()) fail(errc::domain, "zero coefficient");
  if (e.base() != e2.base()) fail(errc::base_mismatch, "mixed bases");
  if (e.depth() > 1 || e2.depth() > 1) fail(errc::depth, "exponents must have depth at most 1");
  unsigned base = e.base();
  if (q.sign() != q2.sign()) {
    return {Outcome::not_equal, Method::monomial_normal_form, "coefficients have opposite signs"};
  }
  ExpSum d = e - e2;
  Rational ratio = q2 / q;

  for (const auto& ch : d.chains()) {
    if (inner_is_fraction(ch)) {
      // d is irrational but algebraic, so B^d is transcendental and cannot
      // match the rational coefficient ratio
      return {Outcome::not_equal, Method::transcendence_rule,
              "exponent difference " + d.str() + " is irrational"};
    }
  }

  if (d.chains().empty()) {
    const Rational& r = d.constant_part();
    if (r.is_zero()) {
      bool eq = q == q2;
      return {eq ? Outcome::equal : Outcome::not_equal, Method::monomial_normal_form,
              "equal exponents, coefficients " + q.str() + " vs " + q2.str()};
    }
    if (r.is_integer()) {
      if (mpz_cmpabs_ui(r.num().get_mpz_t(), kMagnitudeCap) <= 0) {
        bool eq = ratio == base_pow(base, r.num().get_si());
        return {eq ? Outcome::equal : Outcome::not_equal, Method::monomial_normal_form,
                "integer exponent shift " + r.str()};
      }
      auto zt = log_base(ratio, base);
      bool eq = zt.has_value() && mpz_cmp_si(r.num().get_mpz_t(), *zt) == 0;
      return {eq ? Outcome::equal : Outcome::not_equal, Method::monomial_normal_form,
              "oversized integer exponent shift"};
    }
    return {Outcome::not_equal, Method::monomial_normal_form,
            "B^(" + r.str() + ") is irrational for a non-integer rational"};
  }

  auto zt = log_base(ratio, base);
  if (!zt) {
    return {Outcome::not_equal, Method::monomial_normal_form,
            "coefficient ratio " + ratio.str() + " is not an integer power of the base"};
  }
  return compare_oversized(base, d, *zt);
}

Verdict decide_zero(const ExpSum& e, mpfr_prec_t max_bits, const EvalLimits& lim) {
  if (e.is_zero()) return {Outcome::equal, Method::structural, "canonical form is zero"};

  const auto& ch = e.chains();
  if (ch.size() == 1 && e.constant_part().is_zero()) {
    return {Outcome::not_equal, Method::monomial_normal_form,
            "a single monomial " + e.str() + " never vanishes"};
  }

  if (e.depth() <= 1 && e.embeds_in_radical_field()) {
    unsigned deg = e.radical_field_degree();
    FieldElement fe = e.to_field_element(deg);
    if (fe.is_zero()) {
      return {Outcome::equal, Method::exact_field,
              "zero in Q(" + std::to_string(e.base()) + "^(1/" + std::to_string(deg) + "))"};
    }
    return {Outcome::not_equal, Method::exact_field, "nonzero coordinates " + fe.str()};
  }

  bool shallow = true;
  for (const auto& p : ch) shallow = shallow && p.inner->depth() <= 1;
  if (shallow) {
    if (ch.size() == 1 && !e.constant_part().is_zero()) {
      Verdict v = decide_chain_pair(ch[0].coeff, *ch[0].inner, -e.constant_part(),
                                    ExpSum(e.base()));
      if (v.outcome != Outcome::unknown) return v;
    } else if (ch.size() == 2 && e.constant_part().is_zero()) {
      Verdict v = decide_chain_pair(ch[0].coeff, *ch[0].inner, -ch[1].coeff, *ch[1].inner);
      if (v.outcome != Outcome::unknown) return v;
    }
  }

  switch (sign_of(e, max_bits, lim)) {
    case SignResult::positive:
      return {Outcome::not_equal, Method::interval_separation, "interval strictly positive"};
    case SignResult::negative:
      return {Outcome::not_equal, Method::interval_separation, "interval strictly negative"};
    case SignResult::undetermined:
      break;
  }
  return {Outcome::unknown, Method::interval_separation,
          "no separation within " + std::to_string(max_bits) + " bits"};
}

std::vector<Rational> recognize_monomial(const FieldElement& x) {
  std::vector<Rational> out;
  auto md = x.monomial_decompose();
  if (!md) return out;
  const auto& [j, u] = *md;
  unsigned base = x.base();
  Rational frac(static_cast<long>(j), static_cast<long>(x.degree()));
  auto check = [&](long z) {
    Rational c = frac + Rational(z);
    if (u == c * base_pow(base, z)) out.push_back(c);
  };
  check(0);
  if (u.sign() > 0) {
    // u = c*B^z with c = j/N + z >= 1 forces B^z <= u
    Rational bp(static_cast<long>(base));
    for (long z = 1; z <= kMagnitudeCap && bp <= u; ++z) {
      check(z);
      bp *= Rational(static_cast<long>(base));
    }
  } else if (u.sign() < 0) {
    // |u| = (|z| - j/N) / B^|z| <= |z|/B^|z|, and that bound shrinks with |z|
    Rational au = u.abs();
    for (long z = -1; z >= -kMagnitudeCap; --z) {
      Rational bound = Rational(-z) * base_pow(base, z);
      if (bound < au) break;
      check(z);
    }
  }
  std::sort(out.begin(), out.end(), [](const Rational& a, const Rational& b) { return cmp(a, b) < 0; });
  return out;
}

std::vector<Rational> solve_gamma(unsigned base, const Rational& a, const Rational& b, unsigned k,
                                  unsigned m, unsigned n) {
  require_prime_base(base);
  if (k < 2 || m < 2 || n < 2) fail(errc::height, "instance heights must be at least 2");
  PowNum alpha = PowNum::atom(base, a);
  PowNum beta = PowNum::atom(base, b);
  ExpSum L = PowNum::tower(alpha, k).exponent() + PowNum::tower(beta, m).exponent();
  if (L.is_zero()) return {Rational(0)};  // gamma = 1 closes the equation at any height

  std::vector<Rational> out;
  if (n == 2) {
    if (L.embeds_in_radical_field()) {
      unsigned deg = L.radical_field_degree();
      return recognize_monomial(L.to_field_element(deg));
    }
    fail(errc::unsupported_shape, "height-2 match needs a radical-field exponent, got " + L.str());
  }
  if (n == 3) {
    if (auto lr = L.as_rational()) {
      // c*B^(c*B^c): negative integers c give an irrational value, fractional
      // c a transcendental one, so positive integers are the only candidates
      if (lr->sign() > 0) {
        for (long c = 1;; ++c) {
          Rational inner = Rational(c) * base_pow(base, c);
          if (inner > Rational(kMagnitudeCap)) break;
          Rational val = Rational(c) * base_pow(base, inner.num().get_si());
          int s = cmp(val, *lr);
          if (s == 0) out.push_back(Rational(c));
          if (s >= 0) break;
        }
      }
      return out;
    }
    if (L.chains().size() == 1 && L.constant_part().is_zero() &&
        L.chains()[0].inner->depth() <= 1) {
      const Rational& qc = L.chains()[0].coeff;
      const ExpSum& inner = *L.chains()[0].inner;
      // c = q*B^(-z) closes the instance when c*B^c matches inner + z
      for (long z = -32; z <= 32; ++z) {
        Rational c = qc * base_pow(base, -z);
        ExpSum cert = ExpSum::chain(base, c, ExpSum::constant(base, c));
        ExpSum target = inner + ExpSum::constant(base, Rational(z));
        if (cert == target) out.push_back(c);
      }
      std::sort(out.begin(), out.end(),
                [](const Rational& x, const Rational& y) { return cmp(x, y) < 0; });
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    }
    fail(errc::unsupported_shape, "height-3 match needs a single-chain exponent, got " + L.str());
  }
  fail(errc::unsupported_shape, "no solver for right-hand height " + std::to_string(n));
}

bool is_trivial_solution(const EquationInstance& inst) {
  return (inst.a.is_zero() && inst.b == inst.c && inst.m == inst.n) ||
         (inst.b.is_zero() && inst.a == inst.c && inst.k == inst.n);
}

Verdict verify_instance(const EquationInstance& inst, mpfr_prec_t max_bits,
                        const EvalLimits& lim) {
  PowNum alpha = PowNum::atom(inst.base, inst.a);
  PowNum beta = PowNum::atom(inst.base, inst.b);
  PowNum gamma = PowNum::atom(inst.base, inst.c);
  ExpSum diff = equation_exponent(alpha, beta, gamma, inst.k, inst.m, inst.n);
  Verdict v = decide_zero(diff, max_bits, lim);
  v.detail = "exponent difference " + diff.str() + "; " + v.detail;
  return v;
}

}  // namespace towereq
