#include "nij/polymatrix.hpp"

#include <stdexcept>

namespace nij {

PolyMatrix zero_matrix(std::size_t rows, std::size_t cols, std::size_t nvars) {
  return PolyMatrix(rows, cols, Poly(nvars));
}

PolyMatrix identity_matrix(std::size_t n, std::size_t nvars) {
  PolyMatrix m = zero_matrix(n, n, nvars);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Poly::constant(nvars, 1);
  return m;
}

std::size_t matrix_nvars(const PolyMatrix& m) {
  if (m.data().empty()) return 0;
  std::size_t n = m.data()[0].nvars();
  for (const auto& p : m.data())
    if (p.nvars() != n) throw ShapeError("matrix entries live in different rings");
  return n;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.cols() != b.rows()) throw ShapeError("matrix product: inner dimensions differ");
  std::size_t nv = matrix_nvars(a);
  PolyMatrix r = zero_matrix(a.rows(), b.cols(), nv);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) r(i, j) += a(i, k) * b(k, j);
    }
  return r;
}

PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("matrix sum: shapes differ");
  PolyMatrix r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) += b(i, j);
  return r;
}

PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("matrix difference: shapes differ");
  PolyMatrix r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) -= b(i, j);
  return r;
}

PolyMatrix scale(const PolyMatrix& a, const Poly& p) {
  PolyMatrix r = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) * p;
  return r;
}

PolyMatrix lift(const ScalarMatrix& m, std::size_t nvars) {
  PolyMatrix r = zero_matrix(m.rows(), m.cols(), nvars);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Poly::constant(nvars, m(i, j));
  return r;
}

PolyMatrix jacobian(std::span<const Poly> fs) {
  if (fs.empty()) throw ShapeError("jacobian of an empty list");
  std::size_t n = fs.size(), nv = fs[0].nvars();
  if (nv < n) throw ShapeError("jacobian: fewer variables than functions");
  PolyMatrix j = zero_matrix(n, n, nv);
  for (std::size_t i = 0; i < n; ++i) {
    if (fs[i].nvars() != nv) throw ShapeError("jacobian: functions over different rings");
    for (std::size_t k = 0; k < n; ++k) j(i, k) = fs[i].derivative(k);
  }
  return j;
}

namespace {

Poly divide_exactly(const Poly& p, const Poly& q) {
  auto d = exact_divide(p, q);
  if (!d.exact()) throw std::logic_error("fraction-free elimination: inexact division");
  return std::move(d.quotient);
}

// Row with a nonzero entry in column c (rows >= from), preferring short entries.
std::ptrdiff_t pick_pivot(const PolyMatrix& m, std::size_t from, std::size_t c) {
  std::ptrdiff_t best = -1;
  for (std::size_t i = from; i < m.rows(); ++i) {
    if (m(i, c).is_zero()) continue;
    if (best < 0 || m(i, c).size() < m(best, c).size()) best = static_cast<std::ptrdiff_t>(i);
  }
  return best;
}

}  // namespace

Poly determinant(const PolyMatrix& in) {
  if (!in.square()) throw ShapeError("determinant of a non-square matrix");
  std::size_t n = in.rows(), nv = matrix_nvars(in);
  if (n == 0) return Poly::constant(nv, 1);
  PolyMatrix m = in;
  Poly prev = Poly::constant(nv, 1);
  bool negate = false;
  for (std::size_t k = 0; k < n; ++k) {
    auto p = pick_pivot(m, k, k);
    if (p < 0) return Poly(nv);
    if (static_cast<std::size_t>(p) != k) {
      m.swap_rows(k, p);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Poly v = m(k, k) * m(i, j) - m(i, k) * m(k, j);
        m(i, j) = k == 0 ? std::move(v) : divide_exactly(v, prev);
      }
      m(i, k) = Poly(nv);
    }
    prev = m(k, k);
  }
  return negate ? -m(n - 1, n - 1) : m(n - 1, n - 1);
}

std::size_t rank(const PolyMatrix& in) {
  std::size_t nv = matrix_nvars(in);
  PolyMatrix m = in;
  Poly prev = Poly::constant(nv, 1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    auto p = pick_pivot(m, r, c);
    if (p < 0) continue;
    m.swap_rows(r, p);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      for (std::size_t j = c + 1; j < m.cols(); ++j)
        m(i, j) = divide_exactly(m(r, c) * m(i, j) - m(i, c) * m(r, j), prev);
      m(i, c) = Poly(nv);
    }
    prev = m(r, c);
    ++r;
  }
  return r;
}

PolyMatrix adjugate(const PolyMatrix& m) {
  if (!m.square()) throw ShapeError("adjugate of a non-square matrix");
  std::size_t n = m.rows(), nv = matrix_nvars(m);
  PolyMatrix adj = zero_matrix(n, n, nv);
  if (n == 1) {
    adj(0, 0) = Poly::constant(nv, 1);
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      PolyMatrix minor = zero_matrix(n - 1, n - 1, nv);
      for (std::size_t r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (std::size_t c = 0, cc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      Poly d = determinant(minor);
      adj(j, i) = (i + j) % 2 ? -d : d;
    }
  return adj;
}

PolyMatrix companion_matrix(std::span<const Poly> sigmas) {
  if (sigmas.empty()) throw ShapeError("companion matrix of an empty sigma set");
  std::size_t n = sigmas.size(), nv = sigmas[0].nvars();
  PolyMatrix s = zero_matrix(n, n, nv);
  for (std::size_t i = 0; i < n; ++i) {
    if (sigmas[i].nvars() != nv) throw ShapeError("sigmas over different rings");
    s(i, 0) = -sigmas[i];
    if (i + 1 < n) s(i, i + 1) = Poly::constant(nv, 1);
  }
  return s;
}

SigmaSet charpoly_sigmas(const PolyMatrix& l) {
  if (!l.square()) throw ShapeError("characteristic polynomial of a non-square matrix");
  std::size_t n = l.rows(), nv = matrix_nvars(l);
  // t is the extra last variable
  PolyMatrix a = zero_matrix(n, n, nv + 1);
  Poly t = Poly::variable(nv + 1, nv);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = -l(i, j).extended(nv + 1);
      if (i == j) a(i, j) += t;
    }
  Poly chi = determinant(a);
  std::vector<std::vector<Poly::Term>> by_degree(n + 1);
  for (const auto& term : chi.terms()) {
    auto e = term.mono.exponents();
    std::uint32_t k = e.back();
    e.pop_back();
    by_degree.at(k).push_back({Monomial(std::move(e)), term.coeff});
  }
  SigmaSet out;
  for (std::size_t k = 1; k <= n; ++k) out.push_back(Poly::from_terms(nv, by_degree[n - k]));
  return out;
}

ScalarMatrix scalar_identity(std::size_t n) {
  ScalarMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b) {
  if (a.cols() != b.rows()) throw ShapeError("matrix product: inner dimensions differ");
  ScalarMatrix r(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += a(i, k) * b(k, j);
    }
  return r;
}

Scalar determinant(const ScalarMatrix& in) {
  if (!in.square()) throw ShapeError("determinant of a non-square matrix");
  ScalarMatrix m = in;
  std::size_t n = m.rows();
  Scalar det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k).is_zero()) ++p;
    if (p == n) return Scalar();
    if (p != k) {
      m.swap_rows(p, k);
      det = -det;
    }
    det *= m(k, k);
    Scalar inv = m(k, k).inverse();
    for (std::size_t i = k + 1; i < n; ++i) {
      if (m(i, k).is_zero()) continue;
      Scalar f = m(i, k) * inv;
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return det;
}

ScalarMatrix inverse(const ScalarMatrix& in) {
  if (!in.square()) throw ShapeError("inverse of a non-square matrix");
  std::size_t n = in.rows();
  ScalarMatrix m = in, inv = scalar_identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && m(p, k).is_zero()) ++p;
    if (p == n) throw std::domain_error("matrix is singular");
    m.swap_rows(p, k);
    inv.swap_rows(p, k);
    Scalar piv = m(k, k).inverse();
    for (std::size_t j = 0; j < n; ++j) {
      m(k, j) *= piv;
      inv(k, j) *= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || m(i, k).is_zero()) continue;
      Scalar f = m(i, k);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

ScalarMatrix evaluate(const PolyMatrix& m, std::span<const Scalar> point) {
  ScalarMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = m(i, j).evaluate(point);
  return r;
}

std::string render(const PolyMatrix& m, std::span<const std::string> names) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += i ? ",\n [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) out += (j ? ", " : "") + render(m(i, j), names);
    out += "]";
  }
  return out + "]";
}

std::string render(const ScalarMatrix& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) out += (j ? ", " : "") + m(i, j).str();
    out += "]";
  }
  return out + "]";
}

}  // namespace nij
