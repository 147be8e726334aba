#include "towereq/field_element.hpp"

#include <numeric>
#include <sstream>

namespace towereq {

FieldElement::FieldElement(unsigned base, unsigned degree, std::vector<Rational> coords)
    : base_(base), degree_(degree), coords_(std::move(coords)) {
  require_prime_base(base);
  if (degree_ == 0) fail(errc::domain, "degree must be positive");
  if (coords_.size() != degree_) {
    fail(errc::arity, "expected " + std::to_string(degree_) + " coordinates, got " +
                          std::to_string(coords_.size()));
  }
}

FieldElement FieldElement::zero(unsigned base, unsigned degree) {
  return FieldElement(base, degree, std::vector<Rational>(degree));
}

FieldElement FieldElement::from_rational(unsigned base, unsigned degree, const Rational& q) {
  std::vector<Rational> c(degree);
  c[0] = q;
  return FieldElement(base, degree, std::move(c));
}

FieldElement FieldElement::theta_power(unsigned base, unsigned degree, long p) {
  long n = static_cast<long>(degree);
  long r = ((p % n) + n) % n;
  long q = (p - r) / n;
  std::vector<Rational> c(degree);
  c[static_cast<size_t>(r)] = base_pow(base, q);
  return FieldElement(base, degree, std::move(c));
}

const Rational& FieldElement::coord(unsigned i) const {
  if (i >= degree_) fail(errc::arity, "coordinate index out of range");
  return coords_[i];
}

bool FieldElement::is_zero() const {
  for (const auto& c : coords_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

std::optional<Rational> FieldElement::as_rational() const {
  for (unsigned i = 1; i < degree_; ++i) {
    if (!coords_[i].is_zero()) return std::nullopt;
  }
  return coords_[0];
}

std::optional<std::pair<unsigned, Rational>> FieldElement::monomial_decompose() const {
  std::optional<std::pair<unsigned, Rational>> hit;
  for (unsigned i = 0; i < degree_; ++i) {
    if (coords_[i].is_zero()) continue;
    if (hit) return std::nullopt;
    hit = {i, coords_[i]};
  }
  return hit;
}

FieldElement FieldElement::promote(unsigned new_degree) const {
  if (new_degree == 0 || new_degree % degree_ != 0) {
    fail(errc::promotion, "degree " + std::to_string(degree_) + " does not divide " +
                              std::to_string(new_degree));
  }
  unsigned stride = new_degree / degree_;
  std::vector<Rational> c(new_degree);
  for (unsigned i = 0; i < degree_; ++i) c[i * stride] = coords_[i];
  return FieldElement(base_, new_degree, std::move(c));
}

void FieldElement::require_compatible(const FieldElement& o) const {
  if (base_ != o.base_) fail(errc::base_mismatch, "mixed bases");
  if (degree_ != o.degree_) fail(errc::promotion, "mixed degrees, promote first");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  require_compatible(o);
  std::vector<Rational> c(coords_);
  for (unsigned i = 0; i < degree_; ++i) c[i] += o.coords_[i];
  return FieldElement(base_, degree_, std::move(c));
}

FieldElement FieldElement::operator-(const FieldElement& o) const { return *this + (-o); }

FieldElement FieldElement::operator-() const {
  std::vector<Rational> c(coords_);
  for (auto& v : c) v = -v;
  return FieldElement(base_, degree_, std::move(c));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  require_compatible(o);
  std::vector<Rational> conv(2 * degree_ - 1);
  for (unsigned i = 0; i < degree_; ++i) {
    if (coords_[i].is_zero()) continue;
    for (unsigned j = 0; j < degree_; ++j) {
      if (o.coords_[j].is_zero()) continue;
      conv[i + j] += coords_[i] * o.coords_[j];
    }
  }
  Rational b(static_cast<long>(base_));
  std::vector<Rational> c(conv.begin(), conv.begin() + degree_);
  for (unsigned k = degree_; k < conv.size(); ++k) c[k - degree_] += conv[k] * b;
  return FieldElement(base_, degree_, std::move(c));
}

FieldElement FieldElement::scalar_mul(const Rational& q) const {
  std::vector<Rational> c(coords_);
  for (auto& v : c) v *= q;
  return FieldElement(base_, degree_, std::move(c));
}

bool FieldElement::operator==(const FieldElement& o) const {
  if (base_ != o.base_ || degree_ != o.degree_) return false;
  return coords_ == o.coords_;
}

std::string FieldElement::str() const {
  std::ostringstream out;
  out << "[" << base_ << "^(1/" << degree_ << "):";
  for (unsigned i = 0; i < degree_; ++i) {
    out << (i ? "," : " ") << coords_[i].str();
  }
  out << "]";
  return out.str();
}

std::pair<FieldElement, FieldElement> aligned(const FieldElement& x, const FieldElement& y) {
  if (x.base() != y.base()) fail(errc::base_mismatch, "mixed bases");
  unsigned l = std::lcm(x.degree(), y.degree());
  return {x.promote(l), y.promote(l)};
}

}  // namespace towereq
