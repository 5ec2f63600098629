#include "doctest.h"
#include "gen.hpp"
#include "nij/expr.hpp"
#include "nij/nijenhuis.hpp"

using namespace nij;

namespace {

const std::vector<std::string> X = {"x1", "x2", "x3"};
const std::vector<std::string> XYZ = {"x", "y", "z"};
const std::vector<std::string> XY = {"x", "y"};

PolyMatrix M(const std::vector<std::vector<std::string>>& rows, const std::vector<std::string>& names) {
  PolyMatrix m = zero_matrix(rows.size(), rows.size(), names.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = parse_poly(rows[i][j], names);
  return m;
}

// 1-based relation list {i, j, k, coeff}.
StructureConstants rel(std::size_t n, std::initializer_list<std::tuple<int, int, int, Scalar>> r) {
  StructureConstants sc(n);
  for (const auto& [i, j, k, c] : r) sc(i - 1, j - 1, k - 1) = c;
  return sc;
}

StructureConstants random_sc(std::mt19937& g, std::size_t n) {
  StructureConstants sc(n);
  // sparse draws keep a reasonable share of left-symmetric samples
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (g() % 3 == 0) sc(i, j, k) = Scalar(gen::small(g, -2, 2));
  return sc;
}

// Hand evaluation of the four-term formula for one component.
Poly torsion_component(const PolyMatrix& l, std::size_t i, std::size_t j, std::size_t k) {
  std::size_t n = l.rows();
  Poly c(matrix_nvars(l));
  for (std::size_t s = 0; s < n; ++s) {
    c += l(s, j) * l(i, k).derivative(s);
    c -= l(s, k) * l(i, j).derivative(s);
    c -= l(i, s) * l(s, k).derivative(j);
    c += l(i, s) * l(s, j).derivative(k);
  }
  return c;
}

}  // namespace

TEST_CASE("lsa_to_operator reproduces the tables") {
  auto b4p = rel(2, {{1, 1, 1, 2}, {1, 2, 2, 1}, {2, 2, 1, -1}});
  CHECK(lsa_to_operator(b4p) == M({{"2*x", "-y"}, {"y", "0"}}, XY));
  CHECK(lsa_to_operator(StructureConstants(3)) == zero_matrix(3, 3, 3));
  auto t24 = rel(3, {{1, 1, 1, -1}, {1, 2, 2, Scalar(-2, 3)}, {1, 3, 3, Scalar(-1, 3)},
                     {2, 3, 1, 1}, {3, 2, 1, 1}, {3, 3, 2, 1}});
  CHECK(lsa_to_operator(t24) == M({{"-x", "z", "y"}, {"-2/3*y", "0", "z"}, {"-1/3*z", "0", "0"}}, XYZ));
}

TEST_CASE("operator_to_lsa") {
  auto b4p = rel(2, {{1, 1, 1, 2}, {1, 2, 2, 1}, {2, 2, 1, -1}});
  CHECK(operator_to_lsa(M({{"2*x", "-y"}, {"y", "0"}}, XY)) == b4p);
  std::vector<std::string> one = {"x"};
  CHECK(operator_to_lsa(M({{"x"}}, one)) == rel(1, {{1, 1, 1, 1}}));
  CHECK_THROWS_AS(operator_to_lsa(M({{"x^2", "0"}, {"0", "y"}}, XY)), std::invalid_argument);
  CHECK_THROWS_AS(operator_to_lsa(M({{"x + 1", "0"}, {"0", "y"}}, XY)), std::invalid_argument);
  std::mt19937 g(29);
  for (int it = 0; it < 100; ++it) {
    std::size_t n = 1 + it % 4;
    auto sc = random_sc(g, n);
    CHECK(operator_to_lsa(lsa_to_operator(sc)) == sc);
    PolyMatrix r = lsa_to_operator(sc);
    CHECK(lsa_to_operator(operator_to_lsa(r)) == r);
  }
}

TEST_CASE("torsion examples") {
  auto l = M({{"2*x", "-y", "0"}, {"y", "0", "0"}, {"0", "0", "z"}}, XYZ);
  CHECK(torsion(l).is_zero());
  // eta1 * eta2 = eta1
  auto bad = lsa_to_operator(rel(2, {{1, 2, 1, 1}}));
  CHECK(bad == M({{"y", "0"}, {"0", "0"}}, XY));
  auto t = torsion(bad);
  CHECK(t(0, 0, 1) == parse_poly("y", XY));
  CHECK(torsion_component(bad, 0, 0, 1) == parse_poly("y", XY));
  CHECK(t.first_nonzero() == std::array<std::size_t, 3>{0, 0, 1});
  PolyMatrix c = scale(identity_matrix(3, 3), Poly::constant(3, Scalar(5, 2)));
  CHECK(torsion(c).is_zero());
}

TEST_CASE("torsion agrees with the hand formula and is antisymmetric") {
  std::mt19937 g(31);
  for (int it = 0; it < 40; ++it) {
    std::size_t n = 2 + it % 2;
    PolyMatrix l = zero_matrix(n, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) l(i, j) = gen::poly(g, n, 3, 2);
    auto t = torsion(l);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          CHECK(t(i, j, k) == torsion_component(l, i, j, k));
          CHECK((t(i, j, k) + t(i, k, j)).is_zero());
        }
  }
}

TEST_CASE("left symmetry") {
  auto b4p = rel(2, {{1, 1, 1, 2}, {1, 2, 2, 1}, {2, 2, 1, -1}});
  CHECK(is_left_symmetric(b4p).ok);
  auto bad = is_left_symmetric(rel(2, {{1, 2, 1, 1}}));
  CHECK_FALSE(bad.ok);
  REQUIRE(bad.witness);
  // (1,2,2) in 1-based numbering
  CHECK(*bad.witness == std::array<std::size_t, 3>{0, 1, 1});
  auto sc = rel(2, {{1, 2, 1, 1}});
  CHECK(associator(sc, 0, 1, 1) == std::vector<Scalar>{Scalar(1), Scalar(0)});
  CHECK(associator(sc, 1, 0, 1) == std::vector<Scalar>{Scalar(0), Scalar(0)});
  CHECK(is_left_symmetric(StructureConstants(3)).ok);
}

TEST_CASE("Proposition 1.1 on random structure constants") {
  std::mt19937 g(1001);
  int pos = 0, neg = 0;
  for (int it = 0; it < 500; ++it) {
    auto sc = random_sc(g, 2 + it % 2);
    bool ls = is_left_symmetric(sc).ok;
    bool nij = torsion(lsa_to_operator(sc)).is_zero();
    CHECK(ls == nij);
    (ls ? pos : neg)++;
  }
  CHECK(pos >= 20);
  CHECK(neg >= 20);
}

TEST_CASE("coordinate changes") {
  auto l = M({{"2*x", "-y", "0"}, {"y", "0", "0"}, {"0", "0", "z"}}, XYZ);
  CHECK(change_coordinates(l, scalar_identity(3)) == l);
  ScalarMatrix sing(3, 3);
  CHECK_THROWS_AS(change_coordinates(l, sing), std::domain_error);
  std::mt19937 g(37);
  for (int it = 0; it < 40; ++it) {
    auto sc = random_sc(g, 3);
    PolyMatrix r = lsa_to_operator(sc);
    ScalarMatrix t = gen::invertible(g, 3);
    PolyMatrix c = change_coordinates(r, t);
    // torsion naturality
    CHECK(torsion(c).is_zero() == torsion(r).is_zero());
    // charpoly covariance
    SigmaSet a = charpoly_sigmas(c), b = charpoly_sigmas(r);
    for (std::size_t i = 0; i < 3; ++i) CHECK(a[i] == substitute_linear(b[i], t));
    // round trip
    CHECK(change_coordinates(c, inverse(t)) == r);
  }
}

TEST_CASE("direct sums") {
  auto b4p = M({{"2*x", "-y"}, {"y", "0"}}, XY);
  std::vector<std::string> one = {"x"};
  auto d = M({{"x"}}, one);
  CHECK(direct_sum(b4p, d) == M({{"2*x", "-y", "0"}, {"y", "0", "0"}, {"0", "0", "z"}}, XYZ));
  CHECK(direct_sum(direct_sum(d, d), d) == M({{"x1", "0", "0"}, {"0", "x2", "0"}, {"0", "0", "x3"}}, X));
  CHECK(direct_sum(zero_matrix(1, 1, 1), zero_matrix(2, 2, 2)) == zero_matrix(3, 3, 3));
  std::mt19937 g(41);
  int kept = 0;
  for (int it = 0; it < 200 && kept < 30; ++it) {
    auto a = random_sc(g, 2), b = random_sc(g, 1);
    if (!is_left_symmetric(a).ok || !is_left_symmetric(b).ok) continue;
    ++kept;
    PolyMatrix s = direct_sum(lsa_to_operator(a), lsa_to_operator(b));
    CHECK(torsion(s).is_zero());
    CHECK(is_left_symmetric(operator_to_lsa(s)).ok);
  }
  CHECK(kept > 5);
}

TEST_CASE("differential non-degeneracy") {
  std::vector<Poly> l1 = {parse_poly("x1", X), parse_poly("x2*x3", X), parse_poly("1/3*x3^3", X)};
  CHECK(is_differentially_nondegenerate(l1));
  std::vector<Poly> dep = {parse_poly("x1", X), parse_poly("3*x1^2", X), parse_poly("x2*x3^2", X)};
  CHECK_FALSE(is_differentially_nondegenerate(dep));
  std::vector<Poly> id = {parse_poly("x1", X), parse_poly("x2", X), parse_poly("x3", X)};
  CHECK(is_differentially_nondegenerate(id));
}
