#include "towereq/exp_sum.hpp"

#include <algorithm>
#include <sstream>

namespace towereq {

ExpSumPtr share(ExpSum e) { return std::make_shared<const ExpSum>(std::move(e)); }

ExpSum::ExpSum(unsigned base) : base_(base), constant_(0), depth_(0) { require_prime_base(base); }

ExpSum::ExpSum(unsigned base, Rational c, std::vector<ExpChain> chains, int depth)
    : base_(base), constant_(std::move(c)), chains_(std::move(chains)), depth_(depth) {}

ExpSum ExpSum::constant(unsigned base, const Rational& c) { return make(base, c, {}); }

ExpSum ExpSum::chain(unsigned base, const Rational& coeff, const ExpSum& inner) {
  std::vector<ExpChain> parts;
  parts.push_back({coeff, share(inner)});
  return make(base, Rational(0), std::move(parts));
}

ExpSum ExpSum::make(unsigned base, Rational c, std::vector<ExpChain> parts) {
  require_prime_base(base);
  std::vector<ExpChain> kept;
  kept.reserve(parts.size());
  for (auto& p : parts) {
    if (p.coeff.is_zero()) continue;
    if (!p.inner) fail(errc::domain, "missing inner exponent");
    if (p.inner->base() != base) fail(errc::base_mismatch, "mixed bases in exponent sum");
    const ExpSum& in = *p.inner;
    if (auto r = in.as_rational(); r && r->is_integer()) {
      if (mpz_cmpabs_ui(r->num().get_mpz_t(), kMagnitudeCap) <= 0) {
        c += p.coeff * base_pow(base, r->num().get_si());
        continue;
      }
      kept.push_back(std::move(p));
      continue;
    }
    mpz_class zfloor = in.constant_part().floor();
    if (zfloor != 0 && mpz_cmpabs_ui(zfloor.get_mpz_t(), kMagnitudeCap) <= 0) {
      Rational shifted = in.constant_part() - Rational(zfloor, mpz_class(1));
      ExpSum moved(base, std::move(shifted), in.chains(), in.depth());
      kept.push_back({p.coeff * base_pow(base, zfloor.get_si()), share(std::move(moved))});
      continue;
    }
    kept.push_back(std::move(p));
  }
  std::sort(kept.begin(), kept.end(), [](const ExpChain& a, const ExpChain& b) {
    return structural_cmp(*a.inner, *b.inner) < 0;
  });
  std::vector<ExpChain> merged;
  merged.reserve(kept.size());
  for (auto& p : kept) {
    if (!merged.empty() && structural_cmp(*merged.back().inner, *p.inner) == 0) {
      merged.back().coeff += p.coeff;
      if (merged.back().coeff.is_zero()) merged.pop_back();
    } else {
      merged.push_back(std::move(p));
    }
  }
  int depth = 0;
  for (const auto& p : merged) depth = std::max(depth, p.inner->depth() + 1);
  return ExpSum(base, std::move(c), std::move(merged), depth);
}

std::optional<Rational> ExpSum::as_rational() const {
  if (!chains_.empty()) return std::nullopt;
  return constant_;
}

bool ExpSum::embeds_in_radical_field() const {
  mpz_class l(1);
  for (const auto& p : chains_) {
    auto r = p.inner->as_rational();
    if (!r || r->is_integer()) return false;
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r->den().get_mpz_t());
    // A joint degree beyond the cap would make field arithmetic explode;
    // treat such sums as non-embeddable so callers degrade to other stages.
    if (mpz_cmp_ui(l.get_mpz_t(), static_cast<unsigned long>(kMagnitudeCap)) > 0) return false;
  }
  return true;
}

unsigned ExpSum::radical_field_degree() const {
  mpz_class l(1);
  for (const auto& p : chains_) {
    auto r = p.inner->as_rational();
    if (!r || r->is_integer()) fail(errc::depth, "inner exponent is not a fraction");
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r->den().get_mpz_t());
  }
  if (mpz_cmp_ui(l.get_mpz_t(), static_cast<unsigned long>(kMagnitudeCap)) > 0) {
    fail(errc::magnitude, "radical field degree exceeds cap");
  }
  return static_cast<unsigned>(l.get_ui());
}

ExpSum ExpSum::operator+(const ExpSum& o) const {
  if (base_ != o.base_) fail(errc::base_mismatch, "mixed bases");
  std::vector<ExpChain> parts(chains_);
  parts.insert(parts.end(), o.chains_.begin(), o.chains_.end());
  return make(base_, constant_ + o.constant_, std::move(parts));
}

ExpSum ExpSum::operator-(const ExpSum& o) const { return *this + (-o); }

ExpSum ExpSum::operator-() const {
  std::vector<ExpChain> parts(chains_);
  for (auto& p : parts) p.coeff = -p.coeff;
  // negation keeps inner order, merge state and folds intact
  return ExpSum(base_, -constant_, std::move(parts), depth_);
}

ExpSum ExpSum::scalar_mul(const Rational& q) const {
  if (q.is_zero()) return ExpSum(base_);
  std::vector<ExpChain> parts(chains_);
  for (auto& p : parts) p.coeff = p.coeff * q;
  return ExpSum(base_, constant_ * q, std::move(parts), depth_);
}

ExpSum ExpSum::mul_monomial(const Rational& q, const ExpSum& f) const {
  if (base_ != f.base()) fail(errc::base_mismatch, "mixed bases");
  if (q.is_zero()) return ExpSum(base_);
  std::vector<ExpChain> parts;
  parts.reserve(chains_.size() + 1);
  if (!constant_.is_zero()) parts.push_back({constant_ * q, share(f)});
  for (const auto& p : chains_) parts.push_back({p.coeff * q, share(*p.inner + f)});
  return make(base_, Rational(0), std::move(parts));
}

FieldElement ExpSum::to_field_element(unsigned degree) const {
  std::vector<Rational> coords(degree);
  coords[0] = constant_;
  for (const auto& p : chains_) {
    auto r = p.inner->as_rational();
    if (!r) fail(errc::depth, "inner exponent is not rational");
    if (r->is_integer()) fail(errc::magnitude, "integer inner exceeds fold cap");
    if (r->sign() < 0 || *r >= Rational(1)) fail(errc::domain, "inner constant not reduced mod 1");
    if (!mpz_fits_ulong_p(r->den().get_mpz_t())) fail(errc::promotion, "denominator too large");
    unsigned long den = r->den().get_ui();
    if (den == 0 || degree % den != 0) {
      fail(errc::promotion, "denominator " + std::to_string(den) + " does not divide degree " +
                                std::to_string(degree));
    }
    unsigned long idx = r->num().get_ui() * (degree / den);
    coords[idx] += p.coeff;
  }
  return FieldElement(base_, degree, std::move(coords));
}

int structural_cmp(const ExpSum& a, const ExpSum& b) {
  if (a.base_ != b.base_) return a.base_ < b.base_ ? -1 : 1;
  if (a.depth_ != b.depth_) return a.depth_ < b.depth_ ? -1 : 1;
  if (int c = cmp(a.constant_, b.constant_); c != 0) return c;
  if (a.chains_.size() != b.chains_.size()) return a.chains_.size() < b.chains_.size() ? -1 : 1;
  for (size_t i = 0; i < a.chains_.size(); ++i) {
    if (a.chains_[i].inner.get() != b.chains_[i].inner.get()) {
      if (int c = structural_cmp(*a.chains_[i].inner, *b.chains_[i].inner); c != 0) return c;
    }
    if (int c = cmp(a.chains_[i].coeff, b.chains_[i].coeff); c != 0) return c;
  }
  return 0;
}

std::string ExpSum::str() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  if (!constant_.is_zero()) {
    out << constant_.str();
    first = false;
  }
  for (const auto& p : chains_) {
    std::string c = p.coeff.str();
    if (!first) {
      if (!c.empty() && c[0] == '-') {
        out << " - ";
        c.erase(0, 1);
      } else {
        out << " + ";
      }
    }
    out << c << "*" << base_ << "^(" << p.inner->str() << ")";
    first = false;
  }
  return out.str();
}

}  // namespace towereq
