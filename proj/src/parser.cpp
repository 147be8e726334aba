#include "towereq/parser.hpp"

#include <cctype>

namespace towereq {

namespace {

enum class Tok { integer, slash, star, caret, dcaret, lpar, rpar, equals, end };

struct Token {
  Tok kind;
  mpz_class value;  // integer
  size_t pos = 0;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return tok_; }

  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

  [[noreturn]] void error(const std::string& msg, size_t pos) const {
    fail(errc::parse, msg + " at offset " + std::to_string(pos));
  }

 private:
  void advance() {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) ++i_;
    tok_.pos = i_;
    if (i_ >= text_.size()) {
      tok_.kind = Tok::end;
      return;
    }
    char c = text_[i_];
    switch (c) {
      case '/': tok_.kind = Tok::slash; ++i_; return;
      case '*': tok_.kind = Tok::star; ++i_; return;
      case '(': tok_.kind = Tok::lpar; ++i_; return;
      case ')': tok_.kind = Tok::rpar; ++i_; return;
      case '=': tok_.kind = Tok::equals; ++i_; return;
      case '^':
        ++i_;
        if (i_ < text_.size() && text_[i_] == '^') {
          ++i_;
          tok_.kind = Tok::dcaret;
        } else {
          tok_.kind = Tok::caret;
        }
        return;
      default: break;
    }
    size_t start = i_;
    if (c == '-') ++i_;
    size_t digits = i_;
    while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_]))) ++i_;
    if (i_ == digits) error(std::string("unexpected character '") + c + "'", start);
    tok_.kind = Tok::integer;
    tok_.value.set_str(text_.substr(start, i_ - start), 10);
  }

  const std::string& text_;
  Token tok_;
  size_t i_ = 0;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lex_(text) {}

  SyntaxPtr product() {
    std::vector<SyntaxPtr> kids{expr()};
    while (lex_.peek().kind == Tok::star) {
      lex_.take();
      kids.push_back(expr());
    }
    if (kids.size() == 1) return kids[0];
    auto n = std::make_shared<SyntaxNode>();
    n->kind = SyntaxNode::Kind::product;
    n->pos = kids[0]->pos;
    n->kids = std::move(kids);
    return n;
  }

  void expect_end() {
    if (lex_.peek().kind != Tok::end) lex_.error("trailing input", lex_.peek().pos);
  }

  bool at_equals() { return lex_.peek().kind == Tok::equals; }

  void take_equals() { lex_.take(); }

 private:
  SyntaxPtr expr() {
    SyntaxPtr a = atom();
    if (lex_.peek().kind == Tok::dcaret) {
      Token op = lex_.take();
      if (lex_.peek().kind != Tok::integer) lex_.error("expected tower height", lex_.peek().pos);
      Token h = lex_.take();
      if (sgn(h.value) <= 0) lex_.error("tower height must be at least 1", h.pos);
      if (!h.value.fits_uint_p()) lex_.error("tower height too large", h.pos);
      auto n = std::make_shared<SyntaxNode>();
      n->kind = SyntaxNode::Kind::tower;
      n->pos = op.pos;
      n->height = static_cast<unsigned>(h.value.get_ui());
      n->kids = {std::move(a)};
      return n;
    }
    if (lex_.peek().kind == Tok::caret) {
      Token op = lex_.take();
      SyntaxPtr e = expr();  // right-associative
      auto n = std::make_shared<SyntaxNode>();
      n->kind = SyntaxNode::Kind::power;
      n->pos = op.pos;
      n->kids = {std::move(a), std::move(e)};
      return n;
    }
    return a;
  }

  SyntaxPtr atom() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::lpar) {
      lex_.take();
      SyntaxPtr inner = product();
      if (lex_.peek().kind != Tok::rpar) lex_.error("expected ')'", lex_.peek().pos);
      lex_.take();
      auto n = std::make_shared<SyntaxNode>();
      n->kind = SyntaxNode::Kind::group;
      n->pos = inner->pos;
      n->kids = {std::move(inner)};
      return n;
    }
    if (t.kind == Tok::integer) {
      Token num = lex_.take();
      mpz_class den(1);
      if (lex_.peek().kind == Tok::slash) {
        lex_.take();
        if (lex_.peek().kind != Tok::integer) lex_.error("expected denominator", lex_.peek().pos);
        Token d = lex_.take();
        if (sgn(d.value) == 0) lex_.error("zero denominator", d.pos);
        den = d.value;
      }
      auto n = std::make_shared<SyntaxNode>();
      n->kind = SyntaxNode::Kind::literal;
      n->pos = num.pos;
      n->value = Rational(std::move(num.value), std::move(den));
      return n;
    }
    lex_.error("expected a rational or '('", t.pos);
  }

  Lexer lex_;
};

// value = coeff * B^exp with coeff a signed rational
struct Mono {
  Rational coeff;
  ExpSum exp;
};

Mono lower_mono(const SyntaxPtr& node, unsigned base, bool value_pos);

Mono lower_power(const SyntaxPtr& node, unsigned base) {
  const SyntaxPtr& base_node = node->kids[0];
  const SyntaxPtr& exp_node = node->kids[1];
  int sign = 1;
  ExpSum log_base_part(base);
  if (base_node->kind == SyntaxNode::Kind::literal) {
    Rational r = base_node->value;
    if (r.sign() < 0) {
      // "-2^x" reads as -(2^x); "(-2)^x" instead fails below
      sign = -1;
      r = -r;
    }
    auto z = log_base(r, base);
    if (!z) {
      fail(errc::atom_not_power_of_base, "literal " + base_node->value.str() +
                                             " at offset " + std::to_string(base_node->pos) +
                                             " is not an integer power of " + std::to_string(base));
    }
    log_base_part = ExpSum::constant(base, Rational(*z));
  } else {
    Mono bm = lower_mono(base_node, base, true);
    if (bm.coeff != Rational(1)) {
      fail(errc::lowering, "power base at offset " + std::to_string(base_node->pos) +
                               " is not a positive power of the base");
    }
    log_base_part = std::move(bm.exp);
  }
  Mono em = lower_mono(exp_node, base, false);
  return {Rational(sign), log_base_part.mul_monomial(em.coeff, em.exp)};
}

Mono lower_mono(const SyntaxPtr& node, unsigned base, bool value_pos) {
  switch (node->kind) {
    case SyntaxNode::Kind::literal: {
      if (!value_pos) return {node->value, ExpSum(base)};
      auto z = log_base(node->value, base);
      if (!z) {
        fail(errc::atom_not_power_of_base, "literal " + node->value.str() + " at offset " +
                                               std::to_string(node->pos) +
                                               " is not an integer power of " +
                                               std::to_string(base));
      }
      return {Rational(1), ExpSum::constant(base, Rational(*z))};
    }
    case SyntaxNode::Kind::group:
      return lower_mono(node->kids[0], base, value_pos);
    case SyntaxNode::Kind::product: {
      Mono acc{Rational(1), ExpSum(base)};
      for (const auto& kid : node->kids) {
        Mono m = lower_mono(kid, base, value_pos);
        acc.coeff = acc.coeff * m.coeff;
        acc.exp = acc.exp + m.exp;
      }
      if (acc.coeff.is_zero()) return {Rational(0), ExpSum(base)};
      return acc;
    }
    case SyntaxNode::Kind::power:
      return lower_power(node, base);
    case SyntaxNode::Kind::tower: {
      Mono bm = lower_mono(node->kids[0], base, true);
      if (bm.coeff != Rational(1)) {
        fail(errc::lowering, "tower base at offset " + std::to_string(node->kids[0]->pos) +
                                 " is not a positive power of the base");
      }
      PowNum t = PowNum::tower(PowNum::from_exponent(std::move(bm.exp)), node->height);
      return {Rational(1), t.exponent()};
    }
  }
  fail(errc::parse, "unreachable node kind");
}

std::optional<Rational> tower_atom_exponent(const SyntaxPtr& node, unsigned base,
                                            unsigned* height) {
  if (node->kind != SyntaxNode::Kind::tower) return std::nullopt;
  Mono bm = lower_mono(node->kids[0], base, true);
  if (bm.coeff != Rational(1)) return std::nullopt;
  auto r = bm.exp.as_rational();
  if (!r) return std::nullopt;
  *height = node->height;
  return r;
}

}  // namespace

SyntaxPtr parse_expression(const std::string& text) {
  Parser p(text);
  SyntaxPtr e = p.product();
  if (p.at_equals()) fail(errc::parse, "unexpected '=' in an expression");
  p.expect_end();
  return e;
}

std::pair<SyntaxPtr, SyntaxPtr> parse_equation(const std::string& text) {
  Parser p(text);
  SyntaxPtr lhs = p.product();
  if (!p.at_equals()) fail(errc::parse, "expected '='");
  p.take_equals();
  SyntaxPtr rhs = p.product();
  p.expect_end();
  return {std::move(lhs), std::move(rhs)};
}

PowNum lower_value(const SyntaxPtr& node, unsigned base) {
  require_prime_base(base);
  Mono m = lower_mono(node, base, true);
  if (m.coeff != Rational(1)) {
    fail(errc::lowering, "expression at offset " + std::to_string(node->pos) +
                             " does not denote a positive power of the base");
  }
  return PowNum::from_exponent(std::move(m.exp));
}

LoweredEquation lower_equation(const SyntaxPtr& lhs, const SyntaxPtr& rhs, unsigned base) {
  LoweredEquation out{lower_value(lhs, base), lower_value(rhs, base), std::nullopt};
  if (lhs->kind == SyntaxNode::Kind::product && lhs->kids.size() == 2) {
    unsigned k = 0, m = 0, n = 0;
    auto a = tower_atom_exponent(lhs->kids[0], base, &k);
    auto b = tower_atom_exponent(lhs->kids[1], base, &m);
    auto c = tower_atom_exponent(rhs, base, &n);
    if (a && b && c && k >= 2 && m >= 2 && n >= 2) {
      out.instance = EquationInstance{base, *a, *b, *c, k, m, n};
    }
  }
  return out;
}

}  // namespace towereq
