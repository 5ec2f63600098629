#include "nij/catalog.hpp"

#include "nij/expr.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

namespace nij {

using json = nlohmann::ordered_json;

namespace {

std::string idx3(std::size_t i, std::size_t j, std::size_t k) {
  return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + std::to_string(k + 1) + ")";
}

const json& field(const json& j, const char* name, const std::string& id) {
  if (!j.contains(name)) throw DataError("entry " + id + ": missing field '" + name + "'");
  return j.at(name);
}

Poly poly_field(const json& j, const std::vector<std::string>& vars, const std::string& id) {
  if (!j.is_string()) throw DataError("entry " + id + ": polynomial must be a string");
  try {
    return parse_poly(j.get<std::string>(), vars);
  } catch (const std::exception& e) {
    throw DataError("entry " + id + ": bad polynomial '" + j.get<std::string>() + "': " + e.what());
  }
}

Scalar scalar_field(const json& j, const std::string& id) {
  if (!j.is_string()) throw DataError("entry " + id + ": scalar must be a string");
  try {
    return parse_scalar(j.get<std::string>());
  } catch (const std::exception& e) {
    throw DataError("entry " + id + ": bad scalar '" + j.get<std::string>() + "': " + e.what());
  }
}

void check_square(const json& j, std::size_t n, const std::string& what, const std::string& id) {
  if (!j.is_array() || j.size() != n) throw DataError("entry " + id + ": " + what + " must have " + std::to_string(n) + " rows");
  for (const auto& row : j)
    if (!row.is_array() || row.size() != n)
      throw DataError("entry " + id + ": " + what + " rows must have " + std::to_string(n) + " entries");
}

CatalogEntry entry_from_json(const json& j) {
  if (!j.is_object()) throw DataError("catalog entry must be an object");
  CatalogEntry e;
  const json& jid = field(j, "id", "?");
  if (!jid.is_string()) throw DataError("entry id must be a string");
  e.id = jid.get<std::string>();
  try {
    e.dim = field(j, "dim", e.id).get<std::size_t>();
    e.radicand = field(j, "radicand", e.id).get<std::uint64_t>();
  } catch (const nlohmann::json::exception&) {
    throw DataError("entry " + e.id + ": dim and radicand must be non-negative integers");
  }
  if (e.dim == 0) throw DataError("entry " + e.id + ": dim must be positive");
  std::size_t n = e.dim;
  if (j.contains("vars")) {
    for (const auto& v : j.at("vars")) e.vars.push_back(v.get<std::string>());
    if (e.vars.size() != n) throw DataError("entry " + e.id + ": vars must have dim names");
  } else {
    e.vars = default_names(n);
  }
  const json& op = field(j, "operator", e.id);
  check_square(op, n, "operator", e.id);
  e.op = zero_matrix(n, n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) e.op(r, c) = poly_field(op[r][c], e.vars, e.id);
  const json& sg = field(j, "sigmas", e.id);
  if (!sg.is_array() || sg.size() != n) throw DataError("entry " + e.id + ": sigmas must have dim entries");
  for (const auto& s : sg) e.sigmas.push_back(poly_field(s, e.vars, e.id));
  e.relations = StructureConstants(n);
  for (const auto& r : field(j, "relations", e.id)) {
    std::size_t i, jj, k;
    try {
      i = r.at("i").get<std::size_t>(), jj = r.at("j").get<std::size_t>(), k = r.at("k").get<std::size_t>();
    } catch (const nlohmann::json::exception&) {
      throw DataError("entry " + e.id + ": relation needs integer i, j, k");
    }
    if (i < 1 || jj < 1 || k < 1 || i > n || jj > n || k > n)
      throw DataError("entry " + e.id + ": relation index out of range");
    e.relations(i - 1, jj - 1, k - 1) = scalar_field(field(r, "coeff", e.id), e.id);
  }
  if (j.contains("change")) {
    const json& ch = j.at("change");
    check_square(ch, n, "change", e.id);
    ScalarMatrix t(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) t(r, c) = scalar_field(ch[r][c], e.id);
    e.change = t;
  }
  if (j.contains("target")) e.target = j.at("target").get<std::string>();
  if (j.contains("sign_variant")) e.sign_variant = j.at("sign_variant").get<std::string>();
  if (e.change && !e.target) throw DataError("entry " + e.id + ": change without target");
  return e;
}

json entry_to_json(const CatalogEntry& e) {
  json j;
  j["id"] = e.id;
  j["dim"] = e.dim;
  j["radicand"] = e.radicand;
  j["vars"] = e.vars;
  json op = json::array();
  for (std::size_t r = 0; r < e.op.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < e.op.cols(); ++c) row.push_back(render(e.op(r, c), e.vars));
    op.push_back(row);
  }
  j["operator"] = op;
  json sg = json::array();
  for (const auto& s : e.sigmas) sg.push_back(render(s, e.vars));
  j["sigmas"] = sg;
  json rel = json::array();
  std::size_t n = e.relations.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t jj = 0; jj < n; ++jj)
      for (std::size_t k = 0; k < n; ++k)
        if (!e.relations(i, jj, k).is_zero())
          rel.push_back(json{{"i", i + 1}, {"j", jj + 1}, {"k", k + 1}, {"coeff", e.relations(i, jj, k).str()}});
  j["relations"] = rel;
  if (e.change) {
    json ch = json::array();
    for (std::size_t r = 0; r < e.change->rows(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < e.change->cols(); ++c) row.push_back((*e.change)(r, c).str());
      ch.push_back(row);
    }
    j["change"] = ch;
  }
  if (e.target) j["target"] = *e.target;
  if (e.sign_variant) j["sign_variant"] = *e.sign_variant;
  return j;
}

Check make(const std::string& name, bool ok, std::string detail = {}) { return Check{name, ok, std::move(detail)}; }

Check torsion_check(const PolyMatrix& op, const std::vector<std::string>& vars) {
  auto t = torsion(op);
  auto w = t.first_nonzero();
  if (!w) return make("torsion", true);
  auto [i, j, k] = *w;
  return make("torsion", false, "N^" + std::to_string(i + 1) + "_" + std::to_string(j + 1) + std::to_string(k + 1) +
                                    " = " + render(t(i, j, k), vars));
}

Check charpoly_check(const CatalogEntry& e) {
  auto s = charpoly_sigmas(e.op);
  for (std::size_t i = 0; i < s.size(); ++i)
    if (i >= e.sigmas.size() || s[i] != e.sigmas[i])
      return make("charpoly", false,
                  "sigma_" + std::to_string(i + 1) + " = " + render(s[i], e.vars) + ", stored " +
                      (i < e.sigmas.size() ? render(e.sigmas[i], e.vars) : std::string("nothing")));
  return make("charpoly", s.size() == e.sigmas.size());
}

Check relations_check(const CatalogEntry& e) {
  StructureConstants sc;
  try {
    sc = operator_to_lsa(e.op);
  } catch (const std::exception& ex) {
    return make("relations", false, ex.what());
  }
  std::size_t n = sc.dim();
  if (e.relations.dim() != n) return make("relations", false, "dimension mismatch");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (sc(i, j, k) != e.relations(i, j, k))
          return make("relations", false,
                      "a" + idx3(i, j, k) + " = " + sc(i, j, k).str() + ", stored " + e.relations(i, j, k).str());
  return make("relations", true);
}

Check left_symmetric_check(const CatalogEntry& e) {
  auto r = is_left_symmetric(e.relations);
  if (r.ok) return make("left_symmetric", true);
  auto [i, j, k] = *r.witness;
  return make("left_symmetric", false, "associator not symmetric at " + idx3(i, j, k));
}

Check eq1_check(const CatalogEntry& e) {
  auto j = jacobian(e.sigmas);
  auto lhs = j * e.op, rhs = companion_matrix(e.sigmas) * j;
  for (std::size_t r = 0; r < lhs.rows(); ++r)
    for (std::size_t c = 0; c < lhs.cols(); ++c)
      if (lhs(r, c) != rhs(r, c))
        return make("eq1", false, "entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) +
                                      "): " + render(lhs(r, c) - rhs(r, c), e.vars));
  return make("eq1", true);
}

Check radicand_check(const CatalogEntry& e) {
  std::set<std::uint64_t> seen;
  auto add = [&](const Poly& p) {
    for (auto d : p.radicands()) seen.insert(d);
  };
  for (const auto& p : e.op.data()) add(p);
  for (const auto& p : e.sigmas) add(p);
  std::size_t n = e.relations.dim();
  for (std::size_t i = 0; i < n * n * n; ++i)
    for (auto d : e.relations(i / (n * n), (i / n) % n, i % n).radicands()) seen.insert(d);
  if (e.change)
    for (const auto& s : e.change->data())
      for (auto d : s.radicands()) seen.insert(d);
  for (auto d : seen)
    if (d != e.radicand) return make("radicand", false, "sqrt(" + std::to_string(d) + ") occurs, declared " + std::to_string(e.radicand));
  return make("radicand", true);
}

Check change_check(const CatalogEntry& e, const std::vector<CatalogEntry>& catalog) {
  auto targets = find_entries(catalog, *e.target);
  if (targets.empty()) return make("change", false, "target " + *e.target + " not in catalog");
  const CatalogEntry& t = *targets.front();
  if (t.dim != e.dim) return make("change", false, "target dimension differs");
  ScalarMatrix inv;
  try {
    inv = inverse(*e.change);
  } catch (const std::domain_error&) {
    return make("change", false, "singular change");
  }
  PolyMatrix got = change_coordinates(e.op, inv);
  for (std::size_t r = 0; r < e.dim; ++r)
    for (std::size_t c = 0; c < e.dim; ++c)
      if (got(r, c) != t.op(r, c))
        return make("change", false, "entry (" + std::to_string(r + 1) + "," + std::to_string(c + 1) + ") is " +
                                         render(got(r, c), t.vars) + ", " + t.id + " has " + render(t.op(r, c), t.vars));
  return make("change", true, "maps to " + t.id);
}

std::size_t require(std::size_t n, std::size_t lo, const char* family) {
  if (n < lo) throw std::invalid_argument(std::string(family) + " needs n >= " + std::to_string(lo));
  return n;
}

Poly X(std::size_t n, std::size_t i) { return Poly::variable(n, i - 1); }  // 1-based

}  // namespace

std::vector<CatalogEntry> parse_catalog(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(std::string("catalog is not valid JSON: ") + e.what());
  }
  const json* list = &j;
  if (j.is_object()) {
    if (!j.contains("entries")) throw DataError("catalog object has no 'entries'");
    list = &j.at("entries");
  }
  if (!list->is_array()) throw DataError("catalog must be an array of entries");
  std::vector<CatalogEntry> out;
  for (const auto& e : *list) out.push_back(entry_from_json(e));
  return out;
}

std::vector<CatalogEntry> load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open catalog " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_catalog(ss.str());
}

std::string entry_json(const CatalogEntry& e, int indent) { return entry_to_json(e).dump(indent); }

std::string dump_catalog(const std::vector<CatalogEntry>& entries) {
  json a = json::array();
  for (const auto& e : entries) a.push_back(entry_to_json(e));
  return a.dump(2) + "\n";
}

std::string canonical_id(const std::string& id) {
  static const std::string oplus = "\xE2\x8A\x95";
  std::string out = id;
  for (std::size_t p; (p = out.find(oplus)) != std::string::npos;) out.replace(p, oplus.size(), "+");
  return out;
}

std::vector<const CatalogEntry*> find_entries(const std::vector<CatalogEntry>& all, const std::string& id) {
  std::vector<const CatalogEntry*> out;
  std::string key = canonical_id(id);
  for (const auto& e : all)
    if (e.id == id || canonical_id(e.id) == key) out.push_back(&e);
  return out;
}

bool VerifyReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
}

const Check* VerifyReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

VerifyReport verify_entry(const CatalogEntry& e, const std::vector<CatalogEntry>& catalog) {
  VerifyReport r{e.id, e.sign_variant, {}};
  r.checks.push_back(torsion_check(e.op, e.vars));
  r.checks.push_back(charpoly_check(e));
  r.checks.push_back(relations_check(e));
  r.checks.push_back(left_symmetric_check(e));
  r.checks.push_back(make("nondegenerate", is_differentially_nondegenerate(e.sigmas)));
  r.checks.push_back(eq1_check(e));
  r.checks.push_back(radicand_check(e));
  if (e.change) r.checks.push_back(change_check(e, catalog));
  return r;
}

std::vector<VerifyReport> verify_all(const std::vector<const CatalogEntry*>& entries,
                                     const std::vector<CatalogEntry>& catalog, unsigned workers) {
  std::vector<VerifyReport> out(entries.size());
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(entries.size())));
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i; (i = next++) < entries.size();) out[i] = verify_entry(*entries[i], catalog);
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  return out;
}

CatalogEntry generalized_L1(std::size_t n) {
  require(n, 2, "L1");
  CatalogEntry e;
  e.id = "L1(" + std::to_string(n) + ")";
  e.dim = n;
  e.vars = default_names(n);
  e.op = zero_matrix(n, n, n);
  Scalar nn(static_cast<long>(n));
  e.op(0, 0) = -X(n, 1);
  for (std::size_t i = 2; i <= n; ++i) e.op(i - 1, 0) = X(n, i) * (Scalar(static_cast<long>(i) - 1 - static_cast<long>(n)) / nn);
  for (std::size_t i = 1; i + 1 <= n - 1; ++i) e.op(i - 1, i) += X(n, n);  // superdiagonal, rows 1..n-2
  for (std::size_t i = 1; i + 2 <= n; ++i) e.op(i - 1, n - 1) += X(n, i + 1) * Scalar(static_cast<long>(i));
  if (n >= 2) e.op(n - 2, n - 1) = n == 2 ? X(n, 2) : X(n, n);
  e.sigmas.push_back(X(n, 1));
  for (std::size_t i = 2; i < n; ++i) e.sigmas.push_back(X(n, i) * X(n, n).pow(static_cast<unsigned>(i - 1)));
  e.sigmas.push_back(X(n, n).pow(static_cast<unsigned>(n)) * (Scalar(1) / nn));
  // eta_a * eta_b = c eta_k, 1-based
  auto& a = e.relations = StructureConstants(n);
  a(0, 0, 0) = Scalar(-1);
  for (std::size_t s = 2; s <= n; ++s) a(0, s - 1, s - 1) = Scalar(static_cast<long>(s) - 1 - static_cast<long>(n)) / nn;
  for (std::size_t s = 2; s <= n - 1; ++s) {
    a(s - 1, n - 1, s - 2) = Scalar(1);
    a(n - 1, s - 1, s - 2) = Scalar(static_cast<long>(s) - 1);
  }
  if (n >= 2) a(n - 1, n - 1, n - 2) += Scalar(1);
  return e;
}

CatalogEntry generalized_L2(std::size_t n) {
  require(n, 3, "L2");
  CatalogEntry e;
  e.id = "L2(" + std::to_string(n) + ")";
  e.dim = n;
  e.vars = default_names(n);
  e.op = zero_matrix(n, n, n);
  for (std::size_t i = 1; i <= n - 1; ++i) e.op(i - 1, 0) = X(n, i);
  for (std::size_t i = 1; i <= n - 2; ++i) e.op(i - 1, i) = -X(n, n);
  e.op(0, n - 1) = -X(n, 2);
  for (std::size_t i = 2; i <= n - 2; ++i)
    e.op(i - 1, n - 1) = X(n, i) * Scalar(-(static_cast<long>(i) - 1)) + X(n, i + 1) * Scalar(-static_cast<long>(i));
  e.op(n - 2, n - 1) = X(n, n - 1) * Scalar(-(static_cast<long>(n) - 2));
  e.op(n - 1, n - 1) = X(n, n);
  e.sigmas.push_back(-X(n, 1) - X(n, n));
  for (std::size_t i = 2; i < n; ++i) {
    Poly s = (X(n, i - 1) + X(n, i)) * X(n, n).pow(static_cast<unsigned>(i - 1));
    e.sigmas.push_back(i % 2 ? -s : s);
  }
  Poly last = X(n, n - 1) * X(n, n).pow(static_cast<unsigned>(n - 1));
  e.sigmas.push_back(n % 2 ? -last : last);
  auto& a = e.relations = StructureConstants(n);
  for (std::size_t s = 1; s <= n - 1; ++s) a(0, s - 1, s - 1) = Scalar(1);
  for (std::size_t s = 2; s <= n - 1; ++s) {
    a(s - 1, n - 1, s - 2) = Scalar(-1);
    a(n - 1, s - 1, s - 2) += Scalar(-(static_cast<long>(s) - 1));
    a(n - 1, s - 1, s - 1) += Scalar(-(static_cast<long>(s) - 1));
  }
  a(n - 1, n - 1, n - 1) = Scalar(1);
  return e;
}

PolyMatrix blocks_operator(std::size_t n, const std::vector<int>& signs, bool printed_reading) {
  require(n, 3, "blocks");
  std::size_t k = (n - 1) / 2;
  if (signs.size() != k)
    throw std::invalid_argument("blocks with n = " + std::to_string(n) + " needs " + std::to_string(k) + " signs");
  for (int s : signs)
    if (s != 1 && s != -1) throw std::invalid_argument("signs must be +1 or -1");
  PolyMatrix m = zero_matrix(n, n, n);
  Poly xn = X(n, n);
  for (std::size_t j = 0; j < k; ++j) {
    std::size_t p = 2 * j + 1, q = 2 * j + 2;
    m(p - 1, p - 1) = X(n, p) * Scalar(2) - xn;
    m(p - 1, q - 1) = X(n, q) * Scalar(signs[j]);
    m(q - 1, p - 1) = printed_reading ? X(n, j + 1) : X(n, q);
    m(q - 1, q - 1) = xn;
    m(p - 1, n - 1) = xn - X(n, p);
  }
  if (n % 2 == 0) {
    m(n - 2, n - 2) = X(n, n - 1) * Scalar(2) - xn;
    m(n - 2, n - 1) = xn - X(n, n - 1);
  }
  m(n - 1, n - 1) = xn;
  return m;
}

CatalogEntry generalized_blocks(std::size_t n, const std::vector<int>& signs) {
  CatalogEntry e;
  e.op = blocks_operator(n, signs);
  e.id = "blocks(" + std::to_string(n) + ")";
  e.dim = n;
  e.vars = default_names(n);
  // no closed form for the sigmas
  e.sigmas = charpoly_sigmas(e.op);
  auto& a = e.relations = StructureConstants(n);
  std::size_t k = (n - 1) / 2;
  for (std::size_t j = 0; j < k; ++j) {
    std::size_t p = 2 * j, q = 2 * j + 1;  // 0-based
    a(p, p, p) = Scalar(2);
    a(p, q, q) = Scalar(1);
    a(p, n - 1, p) = Scalar(-1);
    a(q, q, p) = Scalar(signs[j]);
    a(q, n - 1, q) = Scalar(1);
    a(n - 1, p, p) = Scalar(-1);
    a(n - 1, n - 1, p) = Scalar(1);
  }
  if (n % 2 == 0) {
    std::size_t p = n - 2;
    a(p, p, p) = Scalar(2);
    a(p, n - 1, p) = Scalar(-1);
    a(n - 1, p, p) = Scalar(-1);
    a(n - 1, n - 1, p) = Scalar(1);
  }
  a(n - 1, n - 1, n - 1) = Scalar(1);
  return e;
}

}  // namespace nij
