#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace nij {

using Rational = mpq_class;

// Element of Q(sqrt(d1), sqrt(d2), ...): a rational part plus rational
// multiples of square roots of distinct square-free integers d > 1.
// Those roots are linearly independent over Q, so the representation is
// canonical and equality is structural.
class Scalar {
 public:
  struct Surd {
    std::uint64_t radicand;
    Rational coeff;
    bool operator==(const Surd&) const = default;
  };

  Scalar() = default;
  Scalar(long v) : rat_(v) {}
  Scalar(int v) : rat_(v) {}
  Scalar(const Rational& r) : rat_(r) { rat_.canonicalize(); }
  Scalar(long num, long den);

  // sqrt(r) for r >= 0, reduced to (p/q)*sqrt(s) with s square-free.
  static Scalar sqrt(const Rational& r);
  // c * sqrt(d) for square-free d >= 1 (not checked for d = 1).
  static Scalar surd(std::uint64_t d, const Rational& c);

  bool is_zero() const { return rat_ == 0 && irr_.empty(); }
  bool is_rational() const { return irr_.empty(); }
  bool is_one() const { return irr_.empty() && rat_ == 1; }
  const Rational& rational_part() const { return rat_; }
  const std::vector<Surd>& surds() const { return irr_; }
  // Coefficient of sqrt(d); d = 1 gives the rational part.
  Rational coeff(std::uint64_t d) const;
  // Number of nonzero components (rational part counts as one).
  std::size_t components() const { return irr_.size() + (rat_ != 0 ? 1 : 0); }

  // Exact sign; -1, 0 or 1.
  int sign() const;
  Scalar abs() const { return sign() < 0 ? -*this : *this; }

  // Negates every surd whose radicand is divisible by the prime p.
  Scalar conjugate(std::uint64_t p) const;

  Scalar inverse() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o) { return *this *= o.inverse(); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.rat_ == b.rat_ && a.irr_ == b.irr_;
  }

  // "p", "p/q", "sqrt(3)", "-1/3*sqrt(3)", "1/2+1/3*sqrt(3)".
  std::string str() const;

  // Radicands appearing with nonzero coefficient.
  std::vector<std::uint64_t> radicands() const;

 private:
  void add_surd(std::uint64_t d, const Rational& c);
  Rational rat_;
  std::vector<Surd> irr_;  // sorted by radicand, no zero coefficients
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

// Square-free decomposition n = s^2 * f of a positive integer.
struct SquareFree {
  mpz_class square_root;
  mpz_class free_part;
};
SquareFree square_free_decompose(const mpz_class& n);

std::string rational_str(const Rational& r);

}  // namespace nij
