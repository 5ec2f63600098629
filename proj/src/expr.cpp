#include "nij/expr.hpp"

#include <cctype>

namespace nij {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  ExprPtr parse() {
    auto e = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in \"" + std::string(s_) + "\"");
  }

  void skip() {
    while (pos_ < s_.size()) {
      if (std::isspace(static_cast<unsigned char>(s_[pos_]))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  // Current character, mapping U+2212 (minus sign) to '-'.
  char peek() {
    skip();
    if (pos_ >= s_.size()) return '\0';
    if (s_.compare(pos_, 3, "\xE2\x88\x92") == 0) return '-';
    return s_[pos_];
  }

  void advance() {
    if (s_.compare(pos_, 3, "\xE2\x88\x92") == 0)
      pos_ += 3;
    else
      ++pos_;
  }

  static ExprPtr node(Expr::Kind k, ExprPtr a, ExprPtr b = nullptr) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
  }

  ExprPtr sum() {
    auto e = term();
    for (;;) {
      char c = peek();
      if (c == '+' || c == '-') {
        advance();
        e = node(c == '+' ? Expr::Kind::Add : Expr::Kind::Sub, e, term());
      } else {
        return e;
      }
    }
  }

  static bool starts_primary(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(';
  }

  ExprPtr term() {
    auto e = unary();
    for (;;) {
      char c = peek();
      if (c == '*' || c == '/') {
        advance();
        e = node(c == '*' ? Expr::Kind::Mul : Expr::Kind::Div, e, unary());
      } else if (starts_primary(c)) {
        e = node(Expr::Kind::Mul, e, power());
      } else {
        return e;
      }
    }
  }

  ExprPtr unary() {
    char c = peek();
    if (c == '-') {
      advance();
      return node(Expr::Kind::Neg, unary());
    }
    if (c == '+') {
      advance();
      return unary();
    }
    return power();
  }

  ExprPtr power() {
    auto base = primary();
    if (peek() != '^') return base;
    advance();
    bool paren = peek() == '(';
    if (paren) advance();
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("exponent must be a nonnegative integer");
    auto digits = read_digits();
    if (paren) {
      if (peek() != ')') fail("expected ')'");
      advance();
    }
    mpz_class z(digits);
    if (!z.fits_ulong_p() || z > 1000000) fail("exponent too large");
    auto e = node(Expr::Kind::Pow, base);
    const_cast<Expr&>(*e).exponent = z.get_ui();
    return e;
  }

  std::string read_digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  ExprPtr primary() {
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Number;
      e->number = mpz_class(read_digits());
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (name == "sqrt") {
        if (peek() != '(') fail("expected '(' after sqrt");
        advance();
        auto arg = sum();
        if (peek() != ')') fail("expected ')'");
        advance();
        return node(Expr::Kind::Sqrt, arg);
      }
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::Var;
      e->name = std::move(name);
      return e;
    }
    if (c == '(') {
      advance();
      auto e = sum();
      if (peek() != ')') fail("expected ')'");
      advance();
      return e;
    }
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

void collect(const Expr& e, std::set<std::string>& out) {
  if (e.kind == Expr::Kind::Var) out.insert(e.name);
  if (e.lhs) collect(*e.lhs, out);
  if (e.rhs) collect(*e.rhs, out);
}

}  // namespace

ExprPtr parse_expr(std::string_view text) { return Parser(text).parse(); }

std::set<std::string> identifiers(const Expr& e) {
  std::set<std::string> out;
  collect(e, out);
  return out;
}

Poly to_poly(const Expr& e, std::span<const std::string> names) {
  std::size_t n = names.size();
  switch (e.kind) {
    case Expr::Kind::Number:
      return Poly::constant(n, Scalar(Rational(e.number)));
    case Expr::Kind::Var:
      for (std::size_t i = 0; i < n; ++i)
        if (names[i] == e.name) return Poly::variable(n, i);
      throw ParseError("unknown variable '" + e.name + "'");
    case Expr::Kind::Sqrt: {
      Poly arg = to_poly(*e.lhs, names);
      if (!arg.is_constant() || !arg.constant_value().is_rational())
        throw ParseError("sqrt argument must be a rational constant");
      return Poly::constant(n, Scalar::sqrt(arg.constant_value().rational_part()));
    }
    case Expr::Kind::Neg:
      return -to_poly(*e.lhs, names);
    case Expr::Kind::Add:
      return to_poly(*e.lhs, names) + to_poly(*e.rhs, names);
    case Expr::Kind::Sub:
      return to_poly(*e.lhs, names) - to_poly(*e.rhs, names);
    case Expr::Kind::Mul:
      return to_poly(*e.lhs, names) * to_poly(*e.rhs, names);
    case Expr::Kind::Div: {
      Poly den = to_poly(*e.rhs, names);
      if (!den.is_constant()) throw ParseError("division by a non-constant polynomial");
      if (den.is_zero()) throw std::domain_error("division by zero in polynomial expression");
      return to_poly(*e.lhs, names) * den.constant_value().inverse();
    }
    case Expr::Kind::Pow:
      return to_poly(*e.lhs, names).pow(static_cast<unsigned>(e.exponent));
  }
  throw ParseError("bad expression node");
}

Poly parse_poly(std::string_view text, std::span<const std::string> names) {
  return to_poly(*parse_expr(text), names);
}

Scalar evaluate(const Expr& e, const Lookup& lookup) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return Scalar(Rational(e.number));
    case Expr::Kind::Var:
      return lookup(e.name);
    case Expr::Kind::Sqrt: {
      Scalar arg = evaluate(*e.lhs, lookup);
      if (!arg.is_rational()) throw ParseError("sqrt argument must be rational");
      return Scalar::sqrt(arg.rational_part());
    }
    case Expr::Kind::Neg:
      return -evaluate(*e.lhs, lookup);
    case Expr::Kind::Add:
      return evaluate(*e.lhs, lookup) + evaluate(*e.rhs, lookup);
    case Expr::Kind::Sub:
      return evaluate(*e.lhs, lookup) - evaluate(*e.rhs, lookup);
    case Expr::Kind::Mul:
      return evaluate(*e.lhs, lookup) * evaluate(*e.rhs, lookup);
    case Expr::Kind::Div: {
      Scalar den = evaluate(*e.rhs, lookup);
      if (den.is_zero()) throw std::domain_error("zero denominator");
      return evaluate(*e.lhs, lookup) / den;
    }
    case Expr::Kind::Pow: {
      Scalar base = evaluate(*e.lhs, lookup), r(1);
      for (unsigned long k = 0; k < e.exponent; ++k) r *= base;
      return r;
    }
  }
  throw ParseError("bad expression node");
}

Scalar parse_scalar(std::string_view text) {
  return evaluate(*parse_expr(text), [](const std::string& name) -> Scalar {
    throw ParseError("unexpected identifier '" + name + "' in scalar");
  });
}

}  // namespace nij
