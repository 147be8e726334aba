#include "towereq/parser.hpp"

namespace towereq {

namespace {

// "2", "2^4", "2^(-1/2)"
std::string ratpow_str(unsigned base, const Rational& r) {
  if (r.is_zero()) return "1";
  if (r == Rational(1)) return std::to_string(base);
  if (r.is_integer() && r.sign() > 0) return std::to_string(base) + "^" + r.str();
  return std::to_string(base) + "^(" + r.str() + ")";
}

// Exponent-position rendering of q * B^inner. When |q| itself is an integer
// power of the base it folds into the inner constant, leaving at most a sign.
std::string chain_term(unsigned base, const Rational& q, const ExpSum& inner) {
  std::vector<std::string> pieces;
  std::string lead;
  auto emit_chains = [&]() {
    for (const auto& p : inner.chains()) {
      pieces.push_back(std::to_string(base) + "^(" + chain_term(base, p.coeff, *p.inner) + ")");
    }
  };
  if (auto z = log_base(q.abs(), base)) {
    if (q.sign() < 0) lead = "-";
    Rational shifted = inner.constant_part() + Rational(*z);
    if (!shifted.is_zero()) pieces.push_back(ratpow_str(base, shifted));
    emit_chains();
    if (pieces.empty()) pieces.push_back("1");
  } else {
    pieces.push_back(q.str());
    if (!inner.constant_part().is_zero()) pieces.push_back(ratpow_str(base, inner.constant_part()));
    emit_chains();
  }
  std::string out = lead;
  for (size_t i = 0; i < pieces.size(); ++i) out += (i ? "*" : "") + pieces[i];
  return out;
}

}  // namespace

std::string print_canonical(const PowNum& x) {
  const ExpSum& e = x.exponent();
  unsigned base = x.base();
  std::vector<std::string> factors;
  if (!e.constant_part().is_zero()) factors.push_back(ratpow_str(base, e.constant_part()));
  for (const auto& p : e.chains()) {
    factors.push_back(std::to_string(base) + "^(" + chain_term(base, p.coeff, *p.inner) + ")");
  }
  if (factors.empty()) return "1";
  std::string out;
  for (size_t i = 0; i < factors.size(); ++i) out += (i ? "*" : "") + factors[i];
  return out;
}

}  // namespace towereq
