#include "nij/nijenhuis.hpp"

#include <random>

namespace nij {

bool StructureConstants::is_zero() const {
  for (const auto& v : a_)
    if (!v.is_zero()) return false;
  return true;
}

PolyMatrix lsa_to_operator(const StructureConstants& sc) {
  std::size_t n = sc.dim();
  PolyMatrix r = zero_matrix(n, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<Poly::Term> terms;
      for (std::size_t j = 0; j < n; ++j)
        if (!sc(i, j, k).is_zero()) terms.push_back({Monomial::variable(n, j), sc(i, j, k)});
      r(k, i) = Poly::from_terms(n, std::move(terms));
    }
  return r;
}

StructureConstants operator_to_lsa(const PolyMatrix& r) {
  if (!r.square()) throw ShapeError("operator_to_lsa: operator must be square");
  std::size_t n = r.rows();
  StructureConstants sc(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i) {
      const Poly& p = r(k, i);
      if (p.nvars() != n) throw ShapeError("operator_to_lsa: entries must use exactly n variables");
      if (!p.is_homogeneous(1))
        throw std::invalid_argument("operator_to_lsa: entry (" + std::to_string(k + 1) + "," +
                                    std::to_string(i + 1) + ") is not linear homogeneous");
      for (std::size_t j = 0; j < n; ++j) sc(i, j, k) = p.coeff(Monomial::variable(n, j));
    }
  return sc;
}

bool TorsionTensor::is_zero() const { return !first_nonzero(); }

std::optional<std::array<std::size_t, 3>> TorsionTensor::first_nonzero() const {
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j)
      for (std::size_t k = 0; k < n_; ++k)
        if (!(*this)(i, j, k).is_zero()) return std::array<std::size_t, 3>{i, j, k};
  return std::nullopt;
}

TorsionTensor torsion(const PolyMatrix& l) {
  if (!l.square()) throw ShapeError("torsion: operator must be square");
  std::size_t n = l.rows(), nv = matrix_nvars(l);
  if (nv < n) throw ShapeError("torsion: fewer variables than the dimension");
  // d[s][a][b] = d L(a,b) / d x_s
  std::vector<PolyMatrix> d;
  for (std::size_t s = 0; s < n; ++s) {
    PolyMatrix m = zero_matrix(n, n, nv);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) m(a, b) = l(a, b).derivative(s);
    d.push_back(std::move(m));
  }
  TorsionTensor t(n, nv);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Poly c(nv);
        for (std::size_t s = 0; s < n; ++s) {
          c += l(s, j) * d[s](i, k) - l(s, k) * d[s](i, j);
          c -= l(i, s) * d[j](s, k) - l(i, s) * d[k](s, j);
        }
        t(i, j, k) = std::move(c);
      }
  return t;
}

std::vector<Scalar> associator(const StructureConstants& sc, std::size_t i, std::size_t j, std::size_t k) {
  std::size_t n = sc.dim();
  std::vector<Scalar> out(n);
  for (std::size_t m = 0; m < n; ++m) {
    const Scalar& ij = sc(i, j, m);
    const Scalar& jk = sc(j, k, m);
    for (std::size_t l = 0; l < n; ++l) {
      if (!ij.is_zero()) out[l] += ij * sc(m, k, l);
      if (!jk.is_zero()) out[l] -= jk * sc(i, m, l);
    }
  }
  return out;
}

LeftSymmetryResult is_left_symmetric(const StructureConstants& sc) {
  std::size_t n = sc.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (associator(sc, i, j, k) != associator(sc, j, i, k))
          return {false, std::array<std::size_t, 3>{i, j, k}};
  return {};
}

PolyMatrix change_coordinates(const PolyMatrix& l, const ScalarMatrix& t) {
  if (!l.square() || !t.square() || t.rows() != l.rows())
    throw ShapeError("change_coordinates: dimension mismatch");
  std::size_t n = l.rows(), nv = matrix_nvars(l);
  ScalarMatrix tinv = inverse(t);
  PolyMatrix sub = zero_matrix(n, n, nv);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) sub(i, j) = substitute_linear(l(i, j), t);
  return lift(tinv, nv) * sub * lift(t, nv);
}

PolyMatrix direct_sum(const PolyMatrix& a, const PolyMatrix& b) {
  std::size_t na = a.rows(), nb = b.rows(), n = na + nb;
  if (!a.square() || !b.square()) throw ShapeError("direct_sum: operators must be square");
  if (matrix_nvars(a) != na || matrix_nvars(b) != nb)
    throw ShapeError("direct_sum: operator fields must use exactly their dimension of variables");
  PolyMatrix r = zero_matrix(n, n, n);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) r(i, j) = a(i, j).extended(n);
  for (std::size_t i = 0; i < nb; ++i)
    for (std::size_t j = 0; j < nb; ++j) r(na + i, na + j) = b(i, j).shifted(na, n);
  return r;
}

bool is_differentially_nondegenerate(std::span<const Poly> sigmas) {
  PolyMatrix j = jacobian(sigmas);
  std::size_t nv = matrix_nvars(j);
  std::mt19937 gen(20240607u);
  for (int attempt = 0; attempt < 4; ++attempt) {
    std::vector<Scalar> point;
    for (std::size_t i = 0; i < nv; ++i) point.emplace_back(static_cast<long>(gen() % 61) - 30);
    if (!determinant(evaluate(j, point)).is_zero()) return true;
  }
  return !determinant(j).is_zero();
}

}  // namespace nij
