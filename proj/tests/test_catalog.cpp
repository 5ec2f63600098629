#include "doctest.h"
#include "gen.hpp"
#include "nij/catalog.hpp"
#include "nij/expr.hpp"
#include "nij/reconstruct.hpp"

#include <fstream>
#include <map>
#include <sstream>

using namespace nij;

namespace {

const std::string kCatalog = NIJ_DATA_DIR "/catalog.json";

const std::vector<CatalogEntry>& catalog() {
  static const auto c = load_catalog(kCatalog);
  return c;
}

const CatalogEntry& entry(const std::string& id, const char* variant = nullptr) {
  for (const auto* e : find_entries(catalog(), id))
    if (!variant || (e->sign_variant && *e->sign_variant == variant)) return *e;
  throw std::runtime_error("no entry " + id);
}

PolyMatrix M(const std::vector<std::vector<std::string>>& rows, const std::vector<std::string>& names) {
  PolyMatrix m = zero_matrix(rows.size(), rows.size(), names.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = parse_poly(rows[i][j], names);
  return m;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("catalog contents") {
  const auto& c = catalog();
  CHECK(c.size() == 24);
  std::map<std::size_t, int> by_dim;
  for (const auto& e : c) by_dim[e.dim]++;
  CHECK(by_dim[1] == 1);
  CHECK(by_dim[2] == 4);
  CHECK(by_dim[3] == 19);
  for (const char* id : {"b4+⊕d", "b4-⊕d", "c5+⊕d", "c5-⊕d", "T2.1", "T2.2", "T2.3", "T2.4"}) CHECK(find_entries(c, id).size() == 1);
  for (int i = 1; i <= 8; ++i) CHECK(find_entries(c, "L" + std::to_string(i)).size() == (i == 5 || i == 6 ? 2u : 1u));
  CHECK(find_entries(c, "b4++d").front()->id == "b4+⊕d");

  const auto& l1 = entry("L1");
  std::vector<std::string> x = {"x1", "x2", "x3"};
  CHECK(l1.sigmas == SigmaSet{parse_poly("x1", x), parse_poly("x2*x3", x), parse_poly("1/3*x3^3", x)});
  const auto& b4m = entry("b4-⊕d");
  CHECK(b4m.op == M({{"2*x", "y", "0"}, {"y", "0", "0"}, {"0", "0", "z"}}, b4m.vars));
  CHECK(b4m.sigmas[2] == parse_poly("y^2*z", b4m.vars));
  const auto& d = entry("d");
  CHECK(d.op == M({{"x"}}, {"x"}));
  CHECK(d.relations(0, 0, 0) == Scalar(1));
  CHECK(entry("L7").radicand == 3);
  CHECK(entry("L5").radicand == 0);
}

TEST_CASE("the shipped file is in canonical form") {
  std::string text = slurp(kCatalog);
  CHECK(dump_catalog(parse_catalog(text)) == text);
}

TEST_CASE("every catalog entry verifies") {
  const auto& c = catalog();
  for (const auto& e : c) {
    auto r = verify_entry(e, c);
    CAPTURE(e.id);
    for (const auto& ch : r.checks) {
      CAPTURE(ch.name);
      CAPTURE(ch.detail);
      CHECK(ch.ok);
    }
    CHECK(r.find("torsion"));
    CHECK(r.find("eq1"));
    CHECK((r.find("change") != nullptr) == e.change.has_value());
  }
}

TEST_CASE("parallel verification keeps the order") {
  std::vector<const CatalogEntry*> all;
  for (const auto& e : catalog()) all.push_back(&e);
  auto one = verify_all(all, catalog(), 1), many = verify_all(all, catalog(), 5);
  REQUIRE(one.size() == many.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].id == many[i].id);
    CHECK(one[i].ok() == many[i].ok());
  }
}

TEST_CASE("recorded changes land on the simplified forms") {
  const auto& c = catalog();
  auto mapped = [&](const CatalogEntry& e) { return change_coordinates(e.op, inverse(*e.change)); };
  for (const char* s : {"+", "-"}) {
    CHECK(mapped(entry("L5", s)) == M({{"2*x", "-y", "0"}, {"y", "0", "0"}, {"0", "0", "z"}}, {"x", "y", "z"}));
    CHECK(verify_entry(entry("L6", s), c).ok());
  }
  CHECK(mapped(entry("L7")) == M({{"2*x-z", "y", "z-x"}, {"y", "z", "0"}, {"0", "0", "z"}}, {"x", "y", "z"}));
  // L8 diagonalizes; diag(y1, y2, y3) then goes to c5+ + d
  CHECK(*entry("L8").target == "d⊕d⊕d");
  const auto& ddd = entry("d⊕d⊕d");
  CHECK(mapped(ddd) == entry("c5+⊕d").op);
}

TEST_CASE("the other sign of the L3 change fails") {
  CatalogEntry e = entry("L3");
  (*e.change)(0, 2) = -(*e.change)(0, 2);
  auto r = verify_entry(e, catalog());
  REQUIRE(r.find("change"));
  CHECK_FALSE(r.find("change")->ok);
  CHECK(r.find("torsion")->ok);
}

TEST_CASE("a tampered entry fails with a witness") {
  CatalogEntry e = entry("L1");
  e.op(0, 1) = -e.op(0, 1);
  auto r = verify_entry(e, catalog());
  CHECK_FALSE(r.ok());
  const Check* t = r.find("torsion");
  REQUIRE(t);
  CHECK_FALSE(t->ok);
  CHECK(t->detail.find("N^") == 0);
  CHECK(t->detail.find(" = ") != std::string::npos);
  CHECK_FALSE(r.find("charpoly")->ok);

  CatalogEntry s = entry("c5+");
  s.sigmas[1] = -s.sigmas[1];
  auto rs = verify_entry(s, catalog());
  CHECK(rs.find("torsion")->ok);
  CHECK_FALSE(rs.find("charpoly")->ok);
  CHECK_FALSE(rs.find("eq1")->ok);

  CatalogEntry rel = entry("T2.3");
  rel.relations(1, 2, 0) = Scalar(1);
  CHECK_FALSE(verify_entry(rel, catalog()).find("relations")->ok);

  CatalogEntry rad = entry("L7");
  rad.radicand = 0;
  CHECK_FALSE(verify_entry(rad, catalog()).find("radicand")->ok);

  CatalogEntry tgt = entry("L2");
  tgt.target = "nowhere";
  CHECK_FALSE(verify_entry(tgt, catalog()).find("change")->ok);
}

TEST_CASE("malformed catalog data") {
  CHECK_THROWS_AS(parse_catalog("not json"), DataError);
  CHECK_THROWS_AS(parse_catalog("{}"), DataError);
  CHECK_THROWS_AS(parse_catalog(R"([{"id":"a","dim":1,"radicand":0,"operator":[["x"]],"relations":[]}])"), DataError);
  CHECK_THROWS_AS(parse_catalog(R"([{"id":"a","dim":1,"radicand":0,"operator":[["x+"]],"sigmas":["-x"],"relations":[]}])"),
                  DataError);
  CHECK_THROWS_AS(parse_catalog(R"([{"id":"a","dim":2,"radicand":0,"operator":[["x"]],"sigmas":["-x"],"relations":[]}])"),
                  DataError);
  CHECK_THROWS_AS(
      parse_catalog(R"([{"id":"a","dim":1,"radicand":0,"operator":[["x"]],"sigmas":["-x"],"relations":[{"i":2,"j":1,"k":1,"coeff":"1"}]}])"),
      DataError);
  CHECK_THROWS_AS(load_catalog("/nonexistent/catalog.json"), DataError);
  auto ok = parse_catalog(R"([{"id":"a","dim":1,"radicand":0,"operator":[["x1"]],"sigmas":["-x1"],"relations":[{"i":1,"j":1,"k":1,"coeff":"1"}]}])");
  CHECK(verify_entry(ok.front()).ok());
}

TEST_CASE("Table 1 is the direct sum of Table 3 with d") {
  const auto& d = entry("d");
  for (const char* id : {"b4+", "b4-", "c5+", "c5-"}) {
    CAPTURE(id);
    const auto& two = entry(id);
    const auto& three = entry(std::string(id) + "⊕d");
    CHECK(direct_sum(two.op, d.op) == three.op);
    CHECK(operator_to_lsa(direct_sum(two.op, d.op)) == three.relations);
  }
}

TEST_CASE("torsion is invariant under linear changes") {
  std::mt19937 g(20261015);
  for (const auto& e : catalog()) {
    if (e.dim < 2) continue;
    for (int rep = 0; rep < 3; ++rep) {
      auto t = gen::invertible(g, e.dim);
      CHECK(torsion(change_coordinates(e.op, t)).is_zero());
      PolyMatrix bad = e.op;
      bad(0, 0) += Poly::variable(e.dim, e.dim - 1);
      if (!torsion(bad).is_zero()) CHECK_FALSE(torsion(change_coordinates(bad, t)).is_zero());
    }
  }
}

TEST_CASE("reconstruction returns every catalog operator") {
  for (const auto& e : catalog()) {
    CAPTURE(e.id);
    auto r = reconstruct_operator(e.sigmas);
    REQUIRE(r.linear_part);
    CHECK(*r.linear_part == e.op);
    CHECK(charpoly_sigmas(*r.linear_part) == e.sigmas);
  }
}

TEST_CASE("generalized families for n = 3..7") {
  for (std::size_t n = 3; n <= 7; ++n) {
    CAPTURE(n);
    std::vector<CatalogEntry> es = {generalized_L1(n), generalized_L2(n)};
    std::vector<int> signs((n - 1) / 2);
    for (std::size_t j = 0; j < signs.size(); ++j) signs[j] = j % 2 ? -1 : 1;
    es.push_back(generalized_blocks(n, signs));
    for (auto& s : signs) s = -s;
    es.push_back(generalized_blocks(n, signs));
    for (const auto& e : es) {
      CAPTURE(e.id);
      auto r = verify_entry(e);
      for (const auto& ch : r.checks) {
        CAPTURE(ch.name);
        CAPTURE(ch.detail);
        CHECK(ch.ok);
      }
    }
  }
}

TEST_CASE("closed-form sigmas of L1 and L2") {
  std::vector<std::string> x = default_names(4);
  CHECK(generalized_L1(4).sigmas ==
        SigmaSet{parse_poly("x1", x), parse_poly("x2*x4", x), parse_poly("x3*x4^2", x), parse_poly("1/4*x4^4", x)});
  CHECK(charpoly_sigmas(generalized_L1(4).op) == generalized_L1(4).sigmas);
  std::vector<std::string> y = default_names(5);
  auto l2 = generalized_L2(5);
  CHECK(l2.sigmas[4] == parse_poly("-x4*x5^4", y));
  CHECK(l2.sigmas[2] == parse_poly("-(x2+x3)*x5^2", y));
  CHECK(torsion(l2.op).is_zero());
  // eta_n * eta_s = -(s-1)(eta_{s-1} + eta_s)
  CHECK(l2.relations(4, 2, 1) == Scalar(-2));
  CHECK(l2.relations(4, 2, 2) == Scalar(-2));
  // eta_1 * eta_s = (s-1-n)/n eta_s
  CHECK(generalized_L1(5).relations(0, 2, 2) == Scalar(-3, 5));
  CHECK(generalized_L1(2).relations(0, 1, 1) == Scalar(-1, 2));
  CHECK(verify_entry(generalized_L1(2)).ok());
}

TEST_CASE("generalizations at n = 3 are Table 2") {
  CHECK(generalized_L1(3).op == entry("T2.4").op);
  CHECK(generalized_L1(3).sigmas == entry("T2.4").sigmas);
  CHECK(generalized_L1(3).relations == entry("T2.4").relations);
  CHECK(generalized_L2(3).op == entry("T2.3").op);
  CHECK(generalized_L2(3).relations == entry("T2.3").relations);
  CHECK(generalized_blocks(3, {-1}).op == entry("T2.1").op);
  CHECK(generalized_blocks(3, {-1}).relations == entry("T2.1").relations);
  CHECK(generalized_blocks(3, {1}).op == entry("T2.2").op);
  CHECK(generalized_blocks(3, {1}).relations == entry("T2.2").relations);
  CHECK(generalized_blocks(3, {1}).sigmas == entry("T2.2").sigmas);
}

TEST_CASE("the printed x_{j+1} block reading is not Nijenhuis") {
  // already at n = 3 the printed reading misses Table 2
  CHECK(blocks_operator(3, {1}, true) != entry("T2.2").op);
  CHECK_FALSE(torsion(blocks_operator(5, {1, -1}, true)).is_zero());
  CHECK(torsion(blocks_operator(5, {1, -1})).is_zero());
  CHECK(is_differentially_nondegenerate(generalized_blocks(5, {1, -1}).sigmas));
}

TEST_CASE("generalization argument errors") {
  CHECK_THROWS_AS(generalized_L1(1), std::invalid_argument);
  CHECK_THROWS_AS(generalized_L2(2), std::invalid_argument);
  CHECK_THROWS_AS(generalized_blocks(2, {}), std::invalid_argument);
  CHECK_THROWS_AS(generalized_blocks(5, {1}), std::invalid_argument);
  CHECK_THROWS_AS(generalized_blocks(5, {1, 2}), std::invalid_argument);
}
