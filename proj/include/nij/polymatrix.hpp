#pragma once

#include "nij/matrix.hpp"
#include "nij/poly.hpp"

#include <span>
#include <vector>

namespace nij {

using PolyMatrix = Matrix<Poly>;
using SigmaSet = std::vector<Poly>;

PolyMatrix zero_matrix(std::size_t rows, std::size_t cols, std::size_t nvars);
PolyMatrix identity_matrix(std::size_t n, std::size_t nvars);
// Number of variables shared by the entries; throws if they disagree.
std::size_t matrix_nvars(const PolyMatrix& m);

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b);
PolyMatrix scale(const PolyMatrix& a, const Poly& p);
// Constant matrix embedded over nvars variables.
PolyMatrix lift(const ScalarMatrix& m, std::size_t nvars);

// J[i][j] = d fs[i] / d x_j for j < fs.size(); extra variables of the ring
// are treated as parameters.
PolyMatrix jacobian(std::span<const Poly> fs);

// Fraction-free (Bareiss) elimination with row pivoting.
Poly determinant(const PolyMatrix& m);
PolyMatrix adjugate(const PolyMatrix& m);
// Rank over the fraction field of the coefficient ring.
std::size_t rank(const PolyMatrix& m);

PolyMatrix companion_matrix(std::span<const Poly> sigmas);
// (sigma_1..sigma_n) with det(t*I - L) = t^n + sigma_1 t^(n-1) + ... + sigma_n.
SigmaSet charpoly_sigmas(const PolyMatrix& l);

ScalarMatrix scalar_identity(std::size_t n);
ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b);
Scalar determinant(const ScalarMatrix& m);
// Throws std::domain_error when singular.
ScalarMatrix inverse(const ScalarMatrix& m);
// Evaluates every entry at a point.
ScalarMatrix evaluate(const PolyMatrix& m, std::span<const Scalar> point);

std::string render(const PolyMatrix& m, std::span<const std::string> names);
std::string render(const ScalarMatrix& m);

}  // namespace nij
