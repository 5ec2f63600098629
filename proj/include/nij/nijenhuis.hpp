#pragma once

#include "nij/polymatrix.hpp"

#include <array>
#include <optional>

namespace nij {

// a(i, j, k): eta_i * eta_j = sum_k a(i, j, k) eta_k (0-based).
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(std::size_t n) : n_(n), a_(n * n * n) {}

  std::size_t dim() const { return n_; }
  Scalar& operator()(std::size_t i, std::size_t j, std::size_t k) { return a_[(i * n_ + j) * n_ + k]; }
  const Scalar& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return a_[(i * n_ + j) * n_ + k];
  }
  bool is_zero() const;

  friend bool operator==(const StructureConstants&, const StructureConstants&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Scalar> a_;
};

// R(k, i) = sum_j a(i, j, k) x_j: column i is the image of eta_i under
// right multiplication by the point x.
PolyMatrix lsa_to_operator(const StructureConstants& sc);
// Inverse of lsa_to_operator; throws unless every entry is linear homogeneous
// in n = rows variables.
StructureConstants operator_to_lsa(const PolyMatrix& r);

class TorsionTensor {
 public:
  TorsionTensor(std::size_t n, std::size_t nvars) : n_(n), c_(n * n * n, Poly(nvars)) {}
  std::size_t dim() const { return n_; }
  // Component N^i_{jk}.
  Poly& operator()(std::size_t i, std::size_t j, std::size_t k) { return c_[(i * n_ + j) * n_ + k]; }
  const Poly& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[(i * n_ + j) * n_ + k];
  }
  bool is_zero() const;
  // First nonzero component (i, j, k) in index order.
  std::optional<std::array<std::size_t, 3>> first_nonzero() const;

 private:
  std::size_t n_;
  std::vector<Poly> c_;
};

// Four-term coordinate formula; derivatives are taken in the first n
// variables, n = size of L.
TorsionTensor torsion(const PolyMatrix& l);

struct LeftSymmetryResult {
  bool ok = true;
  // Violating basis triple (i, j, k), 0-based: A(i,j,k) != A(j,i,k).
  std::optional<std::array<std::size_t, 3>> witness;
};
// Associator A(i,j,k) = (e_i e_j) e_k - e_i (e_j e_k), as a coefficient vector.
std::vector<Scalar> associator(const StructureConstants& sc, std::size_t i, std::size_t j, std::size_t k);
LeftSymmetryResult is_left_symmetric(const StructureConstants& sc);

// T^{-1} * L(T y) * T.
PolyMatrix change_coordinates(const PolyMatrix& l, const ScalarMatrix& t);

// Block-diagonal operator; B's variables are shifted past A's.
PolyMatrix direct_sum(const PolyMatrix& a, const PolyMatrix& b);

// det J(sigmas) is not the zero polynomial. Tries a few integer points first.
bool is_differentially_nondegenerate(std::span<const Poly> sigmas);

}  // namespace nij
