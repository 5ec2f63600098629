#pragma once

#include "nij/poly.hpp"

#include <functional>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nij {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Expression tree for the polynomial / scalar text syntax:
//   integers, identifiers, sqrt(e), + - * / ^, parentheses,
//   and implicit products such as "3b_33" or "2(x+y)".
struct Expr {
  enum class Kind { Number, Var, Sqrt, Neg, Add, Sub, Mul, Div, Pow };
  Kind kind;
  mpz_class number;
  std::string name;
  std::shared_ptr<const Expr> lhs, rhs;
  unsigned long exponent = 0;
};
using ExprPtr = std::shared_ptr<const Expr>;

ExprPtr parse_expr(std::string_view text);

// Identifiers used anywhere in e.
std::set<std::string> identifiers(const Expr& e);

// Builds a polynomial; identifiers must be in names. Division is only
// allowed by constants.
Poly to_poly(const Expr& e, std::span<const std::string> names);
Poly parse_poly(std::string_view text, std::span<const std::string> names);

using Lookup = std::function<Scalar(const std::string&)>;
// Evaluates to an exact scalar; division by zero throws std::domain_error.
Scalar evaluate(const Expr& e, const Lookup& lookup);
Scalar parse_scalar(std::string_view text);

}  // namespace nij
