#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "towereq/equality.hpp"
#include "towereq/pow_num.hpp"

namespace towereq {

// Grammar:
//   equation := product '=' product
//   product  := expr ('*' expr)*
//   expr     := atom '^^' nat | atom ('^' expr)?
//   atom     := rational | '(' product ')'
//   rational := ['-'] digits ('/' ['-'] digits)?
// '^' is right-associative and binds tighter than '*'. A '-' belongs to the
// literal after it; there is no subtraction.
struct SyntaxNode;
using SyntaxPtr = std::shared_ptr<const SyntaxNode>;

struct SyntaxNode {
  enum class Kind { literal, group, product, power, tower };
  Kind kind;
  Rational value{0};            // literal
  std::vector<SyntaxPtr> kids;  // group 1, product 2+, power 2, tower 1
  unsigned height = 0;          // tower
  size_t pos = 0;               // byte offset in the input
};

SyntaxPtr parse_expression(const std::string& text);
std::pair<SyntaxPtr, SyntaxPtr> parse_equation(const std::string& text);

// Lower a value-position expression to B^E. Value positions (equation sides,
// top-level factors, power and tower bases) only admit literals that are
// integer powers of the base; exponent positions admit any rational.
PowNum lower_value(const SyntaxPtr& node, unsigned base);

struct LoweredEquation {
  PowNum lhs, rhs;
  // Set when the equation is a two-tower product against a single tower.
  std::optional<EquationInstance> instance;
};
LoweredEquation lower_equation(const SyntaxPtr& lhs, const SyntaxPtr& rhs, unsigned base);

// Canonical rendering of a value; parsing it back yields the identical
// canonical form.
std::string print_canonical(const PowNum& x);

}  // namespace towereq
