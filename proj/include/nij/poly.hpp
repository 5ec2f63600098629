#pragma once

#include "nij/scalar.hpp"

#include <climits>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nij {

template <class T>
class Matrix;
using ScalarMatrix = Matrix<Scalar>;

// Exponent vector; compared in graded lexicographic order with x1 > x2 > ...
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> e);

  static Monomial variable(std::size_t nvars, std::size_t i);

  std::size_t nvars() const { return e_.size(); }
  std::uint32_t operator[](std::size_t i) const { return e_[i]; }
  std::uint32_t degree() const { return deg_; }
  const std::vector<std::uint32_t>& exponents() const { return e_; }

  bool divides(const Monomial& o) const;
  Monomial operator*(const Monomial& o) const;
  // this / o; requires o.divides(*this).
  Monomial operator/(const Monomial& o) const;
  // Exponent of variable i lowered by one (caller checks it is positive).
  Monomial lowered(std::size_t i) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);

 private:
  std::vector<std::uint32_t> e_;
  std::uint32_t deg_ = 0;
};

// Degree reported for the zero polynomial.
inline constexpr int kDegreeMinusInfinity = INT_MIN;

class Poly {
 public:
  struct Term {
    Monomial mono;
    Scalar coeff;
    bool operator==(const Term&) const = default;
  };

  explicit Poly(std::size_t nvars = 0) : nvars_(nvars) {}
  static Poly constant(std::size_t nvars, const Scalar& c);
  static Poly variable(std::size_t nvars, std::size_t i);
  static Poly term(const Monomial& m, const Scalar& c);
  // Takes terms in any order; merges duplicates and drops zeros.
  static Poly from_terms(std::size_t nvars, std::vector<Term> terms);

  std::size_t nvars() const { return nvars_; }
  // Sorted by decreasing monomial, no zero coefficients.
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  // Constant term value; throws unless is_constant().
  Scalar constant_value() const;
  int degree() const;
  // Degree in the first k variables only (minus infinity for 0).
  int degree_in(std::size_t k) const;
  bool is_homogeneous(int k) const;
  const Term& leading() const { return terms_.front(); }
  Scalar coeff(const Monomial& m) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly& operator*=(const Scalar& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Scalar& c) { return a *= c; }
  friend Poly operator*(const Scalar& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  Poly mul_term(const Monomial& m, const Scalar& c) const;
  Poly pow(unsigned k) const;
  Poly derivative(std::size_t var) const;

  // Same polynomial in a ring with more variables appended.
  Poly extended(std::size_t nvars) const;
  // Variable i goes to variable offset + i of a ring with nvars variables.
  Poly shifted(std::size_t offset, std::size_t nvars) const;
  // Replaces x_i by images[i]; all images share one ring.
  Poly substitute(std::span<const Poly> images) const;
  Scalar evaluate(std::span<const Scalar> point) const;

  // Radicands of all coefficients.
  std::vector<std::uint64_t> radicands() const;

 private:
  void check_same(const Poly& o) const;
  std::size_t nvars_;
  std::vector<Term> terms_;
};

// p(T*y): x_i replaced by sum_j T[i][j] y_j.
Poly substitute_linear(const Poly& p, const ScalarMatrix& t);

struct DivisionResult {
  Poly quotient;
  Poly remainder;
  bool exact() const { return remainder.is_zero(); }
};

// Multivariate division by one divisor in grlex order. The remainder is zero
// exactly when q divides p.
DivisionResult exact_divide(const Poly& p, const Poly& q);

// Groups the terms of p by their exponents in the first k variables. Each
// coefficient polynomial lives in the remaining nvars - k variables.
std::vector<std::pair<Monomial, Poly>> split_by_leading_vars(const Poly& p, std::size_t k);

std::vector<std::string> default_names(std::size_t n, const std::string& stem = "x");

std::string render(const Poly& p, std::span<const std::string> names);
std::string render(const Poly& p);
std::string render(const Monomial& m, std::span<const std::string> names);

struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace nij
