#include "nij/poly.hpp"

#include "nij/matrix.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace nij {

using TermMap = std::map<Monomial, Scalar, std::greater<>>;

Monomial::Monomial(std::vector<std::uint32_t> e) : e_(std::move(e)) {
  for (auto v : e_) deg_ += v;
}

Monomial Monomial::variable(std::size_t nvars, std::size_t i) {
  Monomial m(nvars);
  m.e_.at(i) = 1;
  m.deg_ = 1;
  return m;
}

bool Monomial::divides(const Monomial& o) const {
  if (deg_ > o.deg_) return false;
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i] > o.e_[i]) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
  r.deg_ += o.deg_;
  return r;
}

Monomial Monomial::operator/(const Monomial& o) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= o.e_[i];
  r.deg_ -= o.deg_;
  return r;
}

Monomial Monomial::lowered(std::size_t i) const {
  Monomial r(*this);
  --r.e_[i];
  --r.deg_;
  return r;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  if (a.deg_ != b.deg_) return a.deg_ <=> b.deg_;
  return a.e_ <=> b.e_;
}

Poly Poly::constant(std::size_t nvars, const Scalar& c) {
  Poly p(nvars);
  if (!c.is_zero()) p.terms_.push_back({Monomial(nvars), c});
  return p;
}

Poly Poly::variable(std::size_t nvars, std::size_t i) {
  if (i >= nvars) throw std::out_of_range("variable index");
  Poly p(nvars);
  p.terms_.push_back({Monomial::variable(nvars, i), Scalar(1)});
  return p;
}

Poly Poly::term(const Monomial& m, const Scalar& c) {
  Poly p(m.nvars());
  if (!c.is_zero()) p.terms_.push_back({m, c});
  return p;
}

Poly Poly::from_terms(std::size_t nvars, std::vector<Term> terms) {
  TermMap acc;
  for (auto& t : terms) {
    if (t.mono.nvars() != nvars) throw ShapeError("term has wrong number of variables");
    acc[t.mono] += t.coeff;
  }
  Poly p(nvars);
  for (auto& [m, c] : acc)
    if (!c.is_zero()) p.terms_.push_back({m, c});
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.degree() == 0);
}

Scalar Poly::constant_value() const {
  if (!is_constant()) throw std::domain_error("polynomial is not constant");
  return terms_.empty() ? Scalar() : terms_[0].coeff;
}

int Poly::degree() const {
  return terms_.empty() ? kDegreeMinusInfinity : static_cast<int>(terms_.front().mono.degree());
}

int Poly::degree_in(std::size_t k) const {
  int best = kDegreeMinusInfinity;
  for (const auto& t : terms_) {
    int d = 0;
    for (std::size_t i = 0; i < k && i < nvars_; ++i) d += t.mono[i];
    best = std::max(best, d);
  }
  return best;
}

bool Poly::is_homogeneous(int k) const {
  for (const auto& t : terms_)
    if (static_cast<int>(t.mono.degree()) != k) return false;
  return true;
}

Scalar Poly::coeff(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& v) { return t.mono > v; });
  if (it != terms_.end() && it->mono == m) return it->coeff;
  return Scalar();
}

void Poly::check_same(const Poly& o) const {
  if (nvars_ != o.nvars_)
    throw ShapeError("polynomials over different rings (" + std::to_string(nvars_) + " vs " +
                     std::to_string(o.nvars_) + " variables)");
}

Poly Poly::operator-() const {
  Poly r(*this);
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

namespace {

// Merge of two sorted term lists; sign = +1 or -1 applied to b.
std::vector<Poly::Term> merge(const std::vector<Poly::Term>& a, const std::vector<Poly::Term>& b,
                              bool negate) {
  std::vector<Poly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].mono > b[j].mono)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].mono > a[i].mono) {
      out.push_back({b[j].mono, negate ? -b[j].coeff : b[j].coeff});
      ++j;
    } else {
      Scalar c = negate ? a[i].coeff - b[j].coeff : a[i].coeff + b[j].coeff;
      if (!c.is_zero()) out.push_back({a[i].mono, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Poly& Poly::operator+=(const Poly& o) {
  check_same(o);
  terms_ = merge(terms_, o.terms_, false);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  check_same(o);
  terms_ = merge(terms_, o.terms_, true);
  return *this;
}

Poly& Poly::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  a.check_same(b);
  if (a.is_zero() || b.is_zero()) return Poly(a.nvars_);
  if (a.terms_.size() == 1) return b.mul_term(a.terms_[0].mono, a.terms_[0].coeff);
  if (b.terms_.size() == 1) return a.mul_term(b.terms_[0].mono, b.terms_[0].coeff);
  TermMap acc;
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) acc[s.mono * t.mono] += s.coeff * t.coeff;
  Poly r(a.nvars_);
  r.terms_.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (!c.is_zero()) r.terms_.push_back({m, std::move(c)});
  return r;
}

Poly Poly::mul_term(const Monomial& m, const Scalar& c) const {
  Poly r(nvars_);
  if (c.is_zero()) return r;
  r.terms_.reserve(terms_.size());
  // multiplying by a monomial keeps the order
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
  return r;
}

Poly Poly::pow(unsigned k) const {
  Poly result = constant(nvars_, 1), base = *this;
  while (k) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Poly Poly::derivative(std::size_t var) const {
  if (var >= nvars_) throw std::out_of_range("derivative variable index");
  std::vector<Term> out;
  for (const auto& t : terms_) {
    auto e = t.mono[var];
    if (e == 0) continue;
    out.push_back({t.mono.lowered(var), t.coeff * Scalar(static_cast<long>(e))});
  }
  // lowering one exponent can reorder terms
  return from_terms(nvars_, std::move(out));
}

Poly Poly::extended(std::size_t nvars) const { return shifted(0, nvars); }

Poly Poly::shifted(std::size_t offset, std::size_t nvars) const {
  if (offset + nvars_ > nvars) throw ShapeError("shift target ring too small");
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    std::vector<std::uint32_t> e(nvars, 0);
    for (std::size_t i = 0; i < nvars_; ++i) e[offset + i] = t.mono[i];
    out.push_back({Monomial(std::move(e)), t.coeff});
  }
  return from_terms(nvars, std::move(out));
}

Poly Poly::substitute(std::span<const Poly> images) const {
  if (images.size() != nvars_) throw ShapeError("substitute needs one image per variable");
  std::size_t target = images.empty() ? 0 : images[0].nvars();
  for (const auto& im : images)
    if (im.nvars() != target) throw ShapeError("substitution images over different rings");
  std::vector<std::vector<Poly>> powers(nvars_);
  auto power = [&](std::size_t i, std::uint32_t e) -> const Poly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(constant(target, 1));
    while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
    return cache[e];
  };
  Poly r(target);
  for (const auto& t : terms_) {
    Poly m = constant(target, t.coeff);
    for (std::size_t i = 0; i < nvars_; ++i)
      if (t.mono[i]) m = m * power(i, t.mono[i]);
    r += m;
  }
  return r;
}

Scalar Poly::evaluate(std::span<const Scalar> point) const {
  if (point.size() != nvars_) throw ShapeError("evaluation point has wrong dimension");
  Scalar r;
  for (const auto& t : terms_) {
    Scalar v = t.coeff;
    for (std::size_t i = 0; i < nvars_; ++i)
      for (std::uint32_t k = 0; k < t.mono[i]; ++k) v *= point[i];
    r += v;
  }
  return r;
}

std::vector<std::uint64_t> Poly::radicands() const {
  std::set<std::uint64_t> s;
  for (const auto& t : terms_)
    for (auto d : t.coeff.radicands()) s.insert(d);
  return {s.begin(), s.end()};
}

Poly substitute_linear(const Poly& p, const ScalarMatrix& t) {
  std::size_t n = p.nvars();
  if (t.rows() != n || t.cols() != n)
    throw ShapeError("substitute_linear: matrix is " + std::to_string(t.rows()) + "x" +
                     std::to_string(t.cols()) + ", polynomial has " + std::to_string(n) +
                     " variables");
  std::vector<Poly> images;
  images.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Poly::Term> terms;
    for (std::size_t j = 0; j < n; ++j)
      if (!t(i, j).is_zero()) terms.push_back({Monomial::variable(n, j), t(i, j)});
    images.push_back(Poly::from_terms(n, std::move(terms)));
  }
  return p.substitute(images);
}

DivisionResult exact_divide(const Poly& p, const Poly& q) {
  if (q.is_zero()) throw std::domain_error("exact_divide by the zero polynomial");
  if (p.nvars() != q.nvars()) throw ShapeError("exact_divide over different rings");
  const auto& lead = q.leading();
  Scalar inv = lead.coeff.inverse();
  TermMap rest;
  for (const auto& t : p.terms()) rest.emplace(t.mono, t.coeff);
  std::vector<Poly::Term> quot, rem;
  while (!rest.empty()) {
    auto it = rest.begin();
    if (!lead.mono.divides(it->first)) {
      rem.push_back({it->first, it->second});
      rest.erase(it);
      continue;
    }
    Monomial m = it->first / lead.mono;
    Scalar c = it->second * inv;
    rest.erase(it);
    for (std::size_t k = 1; k < q.terms().size(); ++k) {
      const auto& t = q.terms()[k];
      auto [pos, inserted] = rest.try_emplace(t.mono * m);
      pos->second -= c * t.coeff;
      if (pos->second.is_zero()) rest.erase(pos);
    }
    quot.push_back({std::move(m), std::move(c)});
  }
  // both lists were produced in decreasing order
  return {Poly::from_terms(p.nvars(), std::move(quot)), Poly::from_terms(p.nvars(), std::move(rem))};
}

std::vector<std::pair<Monomial, Poly>> split_by_leading_vars(const Poly& p, std::size_t k) {
  if (k > p.nvars()) throw ShapeError("split_by_leading_vars: k exceeds nvars");
  std::size_t rest = p.nvars() - k;
  std::map<Monomial, std::vector<Poly::Term>, std::greater<>> groups;
  for (const auto& t : p.terms()) {
    const auto& e = t.mono.exponents();
    Monomial head(std::vector<std::uint32_t>(e.begin(), e.begin() + k));
    Monomial tail(std::vector<std::uint32_t>(e.begin() + k, e.end()));
    groups[head].push_back({tail, t.coeff});
  }
  std::vector<std::pair<Monomial, Poly>> out;
  for (auto& [head, terms] : groups) out.emplace_back(head, Poly::from_terms(rest, std::move(terms)));
  return out;
}

std::vector<std::string> default_names(std::size_t n, const std::string& stem) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(stem + std::to_string(i + 1));
  return names;
}

std::string render(const Monomial& m, std::span<const std::string> names) {
  std::string out;
  for (std::size_t i = 0; i < m.nvars(); ++i) {
    if (!m[i]) continue;
    if (!out.empty()) out += "*";
    out += names[i];
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

std::string render(const Poly& p, std::span<const std::string> names) {
  if (names.size() < p.nvars()) throw ShapeError("render: not enough variable names");
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& t : p.terms()) {
    bool unit_mono = t.mono.degree() == 0;
    std::string body;
    bool neg = false;
    if (t.coeff.components() > 1) {
      body = "(" + t.coeff.str() + ")";
      if (!unit_mono) body += "*" + render(t.mono, names);
    } else {
      Scalar c = t.coeff;
      if (c.sign() < 0) {
        neg = true;
        c = -c;
      }
      if (unit_mono)
        body = c.str();
      else if (c.is_one())
        body = render(t.mono, names);
      else
        body = c.str() + "*" + render(t.mono, names);
    }
    if (out.empty())
      out = neg ? "-" + body : body;
    else
      out += (neg ? " - " : " + ") + body;
  }
  return out;
}

std::string render(const Poly& p) {
  auto names = default_names(p.nvars());
  return render(p, names);
}

}  // namespace nij
