#include "nij/scalar.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace nij {

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t largest_prime(const std::vector<Scalar::Surd>& irr) {
  std::uint64_t best = 0;
  for (const auto& s : irr)
    for (auto p : prime_factors(s.radicand)) best = std::max(best, p);
  return best;
}

// sqrt(a)*sqrt(b) = g*sqrt(a'*b') with g = gcd(a, b).
std::pair<std::uint64_t, std::uint64_t> surd_product(std::uint64_t a, std::uint64_t b) {
  std::uint64_t g = std::gcd(a, b);
  std::uint64_t r;
  if (__builtin_mul_overflow(a / g, b / g, &r))
    throw std::overflow_error("radicand product overflows 64 bits");
  return {g, r};
}

mpz_class to_mpz(std::uint64_t v) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return z;
}

}  // namespace

Scalar::Scalar(long num, long den) {
  if (den == 0) throw std::domain_error("zero denominator");
  rat_ = Rational(num, den);
  rat_.canonicalize();
}

SquareFree square_free_decompose(const mpz_class& n) {
  if (n <= 0) throw std::domain_error("square_free_decompose needs n > 0");
  constexpr unsigned long kBound = 100000;
  mpz_class m = n, s = 1, f = 1;
  unsigned long d = 2;
  for (; d <= kBound && mpz_class(d) * d <= m; ++d) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), d);
      ++e;
    }
    for (unsigned i = 0; i < e / 2; ++i) s *= d;
    if (e % 2) f *= d;
  }
  if (m == 1) return {s, f};
  if (mpz_class(d) * d > m) {
    f *= m;  // what is left is prime
    return {s, f};
  }
  // every prime factor of m exceeds the bound
  if (mpz_perfect_square_p(m.get_mpz_t())) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
    s *= r;
  } else if (mpz_probab_prime_p(m.get_mpz_t(), 30) || m < mpz_class(kBound) * kBound * kBound) {
    f *= m;
  } else {
    throw std::domain_error("cannot factor " + n.get_str() + " for a square root");
  }
  return {s, f};
}

std::string rational_str(const Rational& r) { return r.get_str(); }

Scalar Scalar::sqrt(const Rational& r) {
  if (r < 0) throw std::domain_error("sqrt of negative rational " + r.get_str());
  if (r == 0) return Scalar();
  mpz_class pq = r.get_num() * r.get_den();
  auto sf = square_free_decompose(pq);
  Rational c(sf.square_root, r.get_den());
  c.canonicalize();
  if (sf.free_part == 1) return Scalar(c);
  if (!sf.free_part.fits_ulong_p()) throw std::overflow_error("radicand too large");
  return surd(sf.free_part.get_ui(), c);
}

Scalar Scalar::surd(std::uint64_t d, const Rational& c) {
  Rational v = c;
  v.canonicalize();
  Scalar s;
  if (d == 1)
    s.rat_ = v;
  else
    s.add_surd(d, v);
  return s;
}

Rational Scalar::coeff(std::uint64_t d) const {
  if (d == 1) return rat_;
  for (const auto& s : irr_)
    if (s.radicand == d) return s.coeff;
  return 0;
}

void Scalar::add_surd(std::uint64_t d, const Rational& c) {
  if (c == 0) return;
  auto it = std::lower_bound(irr_.begin(), irr_.end(), d,
                             [](const Surd& s, std::uint64_t v) { return s.radicand < v; });
  if (it != irr_.end() && it->radicand == d) {
    it->coeff += c;
    if (it->coeff == 0) irr_.erase(it);
  } else {
    irr_.insert(it, Surd{d, c});
  }
}

std::vector<std::uint64_t> Scalar::radicands() const {
  std::vector<std::uint64_t> out;
  for (const auto& s : irr_) out.push_back(s.radicand);
  return out;
}

Scalar Scalar::operator-() const {
  Scalar r(*this);
  r.rat_ = -r.rat_;
  for (auto& s : r.irr_) s.coeff = -s.coeff;
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  rat_ += o.rat_;
  for (const auto& s : o.irr_) add_surd(s.radicand, s.coeff);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  rat_ -= o.rat_;
  for (const auto& s : o.irr_) add_surd(s.radicand, -s.coeff);
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (irr_.empty() && o.irr_.empty()) {
    rat_ *= o.rat_;
    return *this;
  }
  std::map<std::uint64_t, Rational> acc;
  Rational r = rat_ * o.rat_;
  if (o.rat_ != 0)
    for (const auto& s : irr_) acc[s.radicand] += s.coeff * o.rat_;
  if (rat_ != 0)
    for (const auto& s : o.irr_) acc[s.radicand] += s.coeff * rat_;
  for (const auto& a : irr_)
    for (const auto& b : o.irr_) {
      auto [g, d] = surd_product(a.radicand, b.radicand);
      Rational c = a.coeff * b.coeff * to_mpz(g);
      if (d == 1)
        r += c;
      else
        acc[d] += c;
    }
  rat_ = r;
  irr_.clear();
  for (auto& [d, c] : acc)
    if (c != 0) irr_.push_back(Surd{d, c});
  return *this;
}

Scalar Scalar::conjugate(std::uint64_t p) const {
  Scalar r(*this);
  for (auto& s : r.irr_)
    if (s.radicand % p == 0) s.coeff = -s.coeff;
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  Scalar acc(1);
  Scalar y(*this);
  while (!y.is_rational()) {
    Scalar c = y.conjugate(largest_prime(y.irr_));
    acc *= c;
    y *= c;
  }
  Rational inv = 1 / y.rat_;
  return acc * Scalar(inv);
}

int Scalar::sign() const {
  if (irr_.empty()) return sgn(rat_);
  // x = A + B*sqrt(p) with A, B free of p
  std::uint64_t p = largest_prime(irr_);
  Scalar a(rat_), b;
  for (const auto& s : irr_) {
    if (s.radicand == p)
      b.rat_ += s.coeff;
    else if (s.radicand % p == 0)
      b.add_surd(s.radicand / p, s.coeff);
    else
      a.add_surd(s.radicand, s.coeff);
  }
  int sa = a.sign(), sb = b.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  Scalar disc = a * a - Scalar(to_mpz(p)) * b * b;
  return sa * disc.sign();
}

std::string Scalar::str() const {
  std::string out;
  if (rat_ != 0 || irr_.empty()) out = rational_str(rat_);
  for (const auto& s : irr_) {
    Rational c = s.coeff;
    bool neg = c < 0;
    if (neg) c = -c;
    if (!out.empty() || neg) out += neg ? "-" : "+";
    if (c != 1) out += rational_str(c) + "*";
    out += "sqrt(" + std::to_string(s.radicand) + ")";
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace nij
