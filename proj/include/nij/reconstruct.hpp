#pragma once

#include "nij/polymatrix.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace nij {

struct ReconstructionFailure {
  std::size_t row, col;
  Poly numerator;
  Poly remainder;
};

struct ReconstructionResult {
  PolyMatrix numerators;  // adj(J) * S * J
  Poly denominator;       // det J
  std::optional<PolyMatrix> linear_part;
  std::vector<ReconstructionFailure> failures;
};

struct DependentSigmas : std::invalid_argument {
  DependentSigmas(std::size_t k, const std::string& what) : std::invalid_argument(what), count(k) {}
  std::size_t count;  // sigma_1..sigma_count are functionally dependent
};

// L = J^-1 S J via the adjugate. Extra ring variables beyond sigmas.size()
// are parameters. Throws DependentSigmas when det J vanishes identically.
ReconstructionResult reconstruct_operator(std::span<const Poly> sigmas);

// sigma's in n geometric variables whose coefficients are polynomials in
// named parameters; the ring is (x1..xn, params...).
struct ParamSigmaSet {
  std::string tag;
  std::size_t n = 0;
  std::vector<std::string> params;
  SigmaSet sigmas;
  std::vector<std::pair<std::string, Scalar>> fixed;  // parameters replaced by values

  std::size_t nvars() const { return n + params.size(); }
  std::vector<std::string> names() const;
  // Replaces some parameters by values; they stay in the ring but no longer occur.
  ParamSigmaSet with_values(const std::map<std::string, Scalar>& values) const;
};

// Listing-1 parameter order.
const std::vector<std::string>& cubic_params();
// Case tags 1.1, 1.2, 1.3, 2 (= 2.1), 2.1, 2.2, 3, 4.1, 4.2; sigma_3 general.
// Throws std::invalid_argument for other tags.
ParamSigmaSet case_sigmas(const std::string& tag);
std::vector<std::string> case_tags();
// 2D: sigma_2 = a x1^2 + sign x2^2.
ParamSigmaSet case_sigmas_2d(int sign);

struct Equation {
  Poly poly;           // over the system's unknowns
  std::size_t entry;   // 1-based index over the non-first-row entries
  std::size_t row, col;
  Monomial monomial;   // geometric monomial the coefficient belongs to
};

struct LinearitySystem {
  std::size_t n = 0;
  std::vector<std::string> unknowns;  // parameters then alphas
  std::vector<Equation> equations;
  std::vector<std::string> header;    // free-form description lines

  // Names of unknowns occurring in at least one equation.
  std::vector<std::string> used_unknowns() const;
};

// Coefficients of N(r,c) - Q*(alpha_i1 x1 + ... + alpha_in xn) for every
// entry off the first row, grouped by geometric monomial.
LinearitySystem generate_linearity_system(const ParamSigmaSet& ps);

// Deterministic text listing; read_system parses it back.
std::string render_system(const LinearitySystem& sys);
LinearitySystem read_system(const std::string& text);

struct Residual {
  std::size_t equation;  // 0-based index
  Scalar value;
};
struct CheckResult {
  bool ok = true;
  std::vector<Residual> residuals;
};

// Throws std::invalid_argument naming missing unknowns.
CheckResult check_solution(const LinearitySystem& sys, const std::map<std::string, Scalar>& assignment);

// Parses "name = expr" entries (comma or newline separated, optional braces)
// plus "set name = expr" instantiations of free parameters. A right-hand
// side may reference instantiated names; "set * = v" gives every free
// parameter the value v. Zero denominators throw std::domain_error.
std::map<std::string, Scalar> parse_assignment(const std::string& text);

// Normal forms.
struct Sigma1NormalForm {
  Poly form;            // y1
  ScalarMatrix change;  // x = T y
};
Sigma1NormalForm normalize_sigma1(const Poly& s1);

enum class Sigma2Shape { Full, Rank2, Product, ProductPlus, Degenerate };
std::string to_string(Sigma2Shape s);

struct Sigma2NormalForm {
  Sigma2Shape shape;
  Scalar alpha;             // coefficient of y1^2 (0 for Product shapes)
  std::vector<int> signs;   // the +- of the squared terms, in slot order
  Poly form;
  ScalarMatrix change;      // x = T y, first row (1, 0, ..., 0)
};
Sigma2NormalForm normalize_sigma2(const Poly& s2);
// The canonical polynomial for a shape with given alpha and signs.
Poly canonical_sigma2(std::size_t n, Sigma2Shape shape, const Scalar& alpha, const std::vector<int>& signs);

// Rational roots of a univariate polynomial (variable v of p, all other
// variables absent). Also reports whether the roots exhaust the degree.
struct RootReport {
  std::vector<Rational> roots;  // distinct, ascending
  bool complete = false;        // product of (v - r) over roots (with multiplicity) has full degree
};
RootReport rational_roots(const Poly& p, std::size_t v);

}  // namespace nij
