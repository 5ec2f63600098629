#include "nij/reconstruct.hpp"

#include "nij/expr.hpp"

#include <algorithm>
#include <regex>
#include <set>
#include <sstream>

namespace nij {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

// Smallest k such that the first k rows of j are dependent.
std::size_t first_dependent(const PolyMatrix& j) {
  std::size_t nv = matrix_nvars(j);
  for (std::size_t k = 1; k <= j.rows(); ++k) {
    PolyMatrix top = zero_matrix(k, j.cols(), nv);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < j.cols(); ++c) top(r, c) = j(r, c);
    if (rank(top) < k) return k;
  }
  return j.rows();
}

}  // namespace

ReconstructionResult reconstruct_operator(std::span<const Poly> sigmas) {
  if (sigmas.empty()) throw ShapeError("reconstruct_operator: no sigmas");
  std::size_t n = sigmas.size(), nv = sigmas[0].nvars();
  if (nv < n) throw ShapeError("reconstruct_operator: fewer variables than sigmas");
  PolyMatrix j = jacobian(sigmas);
  Poly q = determinant(j);
  if (q.is_zero()) {
    std::size_t k = first_dependent(j);
    throw DependentSigmas(k, "det J is identically zero: sigma_1..sigma_" + std::to_string(k) +
                                 " are functionally dependent");
  }
  ReconstructionResult out{adjugate(j) * companion_matrix(sigmas) * j, q, std::nullopt, {}};
  PolyMatrix l = zero_matrix(n, n, nv);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      auto d = exact_divide(out.numerators(r, c), q);
      if (d.exact())
        l(r, c) = d.quotient;
      else
        out.failures.push_back({r, c, out.numerators(r, c), d.remainder});
    }
  if (out.failures.empty()) out.linear_part = l;
  return out;
}

std::vector<std::string> ParamSigmaSet::names() const {
  auto out = default_names(n);
  out.insert(out.end(), params.begin(), params.end());
  return out;
}

ParamSigmaSet ParamSigmaSet::with_values(const std::map<std::string, Scalar>& values) const {
  std::size_t nv = nvars();
  std::vector<Poly> images;
  for (std::size_t i = 0; i < nv; ++i) images.push_back(Poly::variable(nv, i));
  ParamSigmaSet out = *this;
  for (const auto& [name, v] : values) {
    auto it = std::find(params.begin(), params.end(), name);
    if (it == params.end()) throw std::invalid_argument("unknown parameter " + name);
    images[n + (it - params.begin())] = Poly::constant(nv, v);
    out.fixed.emplace_back(name, v);
  }
  for (auto& s : out.sigmas) s = s.substitute(images);
  return out;
}

const std::vector<std::string>& cubic_params() {
  static const std::vector<std::string> p = {"a",    "b_11", "b_12", "b_13", "b_31", "b_21",
                                             "b_22", "b_23", "b_32", "b_33", "c"};
  return p;
}

std::vector<std::string> case_tags() { return {"1.1", "1.2", "1.3", "2", "2.1", "2.2", "3", "4.1", "4.2"}; }

ParamSigmaSet case_sigmas(const std::string& tag) {
  static const std::map<std::string, std::string> s2 = {
      {"1.1", "a*x1^2 + x2*x3"},        {"1.2", "a*x1^2 - x2^2 - x3^2"}, {"1.3", "a*x1^2 + x2^2 + x3^2"},
      {"2", "a*x1^2 + x2^2"},           {"2.1", "a*x1^2 + x2^2"},        {"2.2", "a*x1^2 - x2^2"},
      {"3", "x1*x2"},                   {"4.1", "x1*x2 + x3^2"},         {"4.2", "x1*x2 - x3^2"}};
  auto it = s2.find(tag);
  if (it == s2.end()) throw std::invalid_argument("unknown case tag '" + tag + "'");
  ParamSigmaSet ps;
  ps.tag = tag;
  ps.n = 3;
  ps.params = cubic_params();
  auto names = ps.names();
  ps.sigmas = {parse_poly("x1", names), parse_poly(it->second, names),
               parse_poly("b_11*x1^3 + 3*b_12*x1^2*x2 + 3*b_13*x1^2*x3 + 3*b_31*x1*x3^2 + 3*b_21*x1*x2^2"
                          " + b_22*x2^3 + 3*b_23*x2^2*x3 + 3*b_32*x2*x3^2 + b_33*x3^3 + 6*c*x1*x2*x3",
                          names)};
  return ps;
}

ParamSigmaSet case_sigmas_2d(int sign) {
  ParamSigmaSet ps;
  ps.tag = sign > 0 ? "2d+" : "2d-";
  ps.n = 2;
  ps.params = {"a"};
  auto names = ps.names();
  ps.sigmas = {parse_poly("x1", names), parse_poly(sign > 0 ? "a*x1^2 + x2^2" : "a*x1^2 - x2^2", names)};
  return ps;
}

std::vector<std::string> LinearitySystem::used_unknowns() const {
  std::set<std::size_t> used;
  for (const auto& e : equations)
    for (const auto& t : e.poly.terms())
      for (std::size_t i = 0; i < t.mono.nvars(); ++i)
        if (t.mono[i]) used.insert(i);
  std::vector<std::string> out;
  for (auto i : used) out.push_back(unknowns[i]);
  return out;
}

LinearitySystem generate_linearity_system(const ParamSigmaSet& ps) {
  std::size_t n = ps.n;
  if (n < 2 || ps.sigmas.size() != n) throw std::invalid_argument("linearity system needs n >= 2 sigmas");
  auto gnames = ps.names();
  for (std::size_t k = 0; k < n; ++k) {
    const Poly& s = ps.sigmas[k];
    if (s.nvars() != ps.nvars()) throw std::invalid_argument("sigma ring does not match the parameter list");
    for (const auto& [m, c] : split_by_leading_vars(s, n))
      if (m.degree() != k + 1)
        throw std::invalid_argument("sigma_" + std::to_string(k + 1) + " is not homogeneous of degree " +
                                    std::to_string(k + 1) + " in the geometric variables");
  }
  if (ps.sigmas[0] != Poly::variable(ps.nvars(), 0)) throw std::invalid_argument("sigma_1 must be x1");

  LinearitySystem sys;
  sys.n = n;
  sys.unknowns = ps.params;
  std::size_t entries = (n - 1) * n;
  for (std::size_t e = 1; e <= entries; ++e)
    for (std::size_t j = 1; j <= n; ++j) sys.unknowns.push_back("alpha" + std::to_string(e) + std::to_string(j));
  std::size_t nv = n + sys.unknowns.size();

  std::vector<Poly> sig;
  for (const auto& s : ps.sigmas) sig.push_back(s.extended(nv));
  PolyMatrix j = jacobian(sig);
  Poly q = determinant(j);
  PolyMatrix num = adjugate(j) * companion_matrix(sig) * j;

  if (!ps.tag.empty()) sys.header.push_back("case: " + ps.tag);
  for (std::size_t k = 0; k < n; ++k)
    sys.header.push_back("sigma_" + std::to_string(k + 1) + " = " + render(ps.sigmas[k], gnames));
  if (!ps.fixed.empty()) {
    std::vector<std::string> f;
    for (const auto& [name, v] : ps.fixed) f.push_back(name + " = " + v.str());
    sys.header.push_back("fixed: " + join(f, ", "));
  }

  std::size_t alpha0 = n + ps.params.size();
  for (std::size_t r = 1; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t e = (r - 1) * n + c;
      Poly lin(nv);
      for (std::size_t i = 0; i < n; ++i) lin += Poly::variable(nv, alpha0 + e * n + i) * Poly::variable(nv, i);
      Poly d = num(r, c) - q * lin;
      for (auto& [m, coeff] : split_by_leading_vars(d, n)) sys.equations.push_back({coeff, e + 1, r + 1, c + 1, m});
    }
  return sys;
}

std::string render_system(const LinearitySystem& sys) {
  std::ostringstream os;
  for (const auto& h : sys.header) os << "# " << h << "\n";
  auto x = default_names(sys.n);
  os << "# dimension: " << sys.n << "\n";
  os << "# unknowns: " << join(sys.unknowns, ", ") << "\n";
  os << "# equations: " << sys.equations.size() << "\n";
  for (std::size_t k = 0; k < sys.equations.size(); ++k) {
    const auto& e = sys.equations[k];
    os << "# [" << k + 1 << "] entry " << e.entry << " (" << e.row << "," << e.col << "), monomial "
       << render(e.monomial, x) << "\n";
    os << render(e.poly, sys.unknowns) << "\n";
  }
  return os.str();
}

LinearitySystem read_system(const std::string& text) {
  LinearitySystem sys;
  std::istringstream is(text);
  std::string line;
  static const std::regex prov(R"(# \[(\d+)\] entry (\d+) \((\d+),(\d+)\), monomial (.+))");
  std::optional<Equation> pending;
  std::size_t expected = 0;
  bool have_unknowns = false;
  std::vector<std::string> x;
  while (std::getline(is, line)) {
    line = trim(line);
    if (line.empty()) continue;
    std::smatch m;
    if (std::regex_match(line, m, prov)) {
      if (!have_unknowns || sys.n == 0) throw ParseError("system: provenance before header");
      pending = Equation{Poly(sys.unknowns.size()), std::stoul(m[2]), std::stoul(m[3]), std::stoul(m[4]),
                         Monomial(sys.n)};
      Poly mono = parse_poly(m[5].str(), x);
      if (mono.size() != 1) throw ParseError("system: bad monomial '" + m[5].str() + "'");
      pending->monomial = mono.leading().mono;
    } else if (line.rfind("# dimension:", 0) == 0) {
      sys.n = std::stoul(line.substr(12));
      x = default_names(sys.n);
    } else if (line.rfind("# unknowns:", 0) == 0) {
      std::stringstream ss(line.substr(11));
      std::string name;
      while (std::getline(ss, name, ',')) sys.unknowns.push_back(trim(name));
      have_unknowns = true;
    } else if (line.rfind("# equations:", 0) == 0) {
      expected = std::stoul(line.substr(12));
    } else if (line[0] == '#') {
      if (!have_unknowns) sys.header.push_back(trim(line.substr(1)));
    } else {
      if (!have_unknowns) throw ParseError("system: equation before the unknowns line");
      Equation e = pending ? *pending : Equation{Poly(), 0, 0, 0, Monomial(sys.n)};
      e.poly = parse_poly(line, sys.unknowns);
      sys.equations.push_back(std::move(e));
      pending.reset();
    }
  }
  if (!have_unknowns) throw ParseError("system: missing '# unknowns:' line");
  if (expected && expected != sys.equations.size())
    throw ParseError("system: header announces " + std::to_string(expected) + " equations, found " +
                     std::to_string(sys.equations.size()));
  return sys;
}

CheckResult check_solution(const LinearitySystem& sys, const std::map<std::string, Scalar>& assignment) {
  std::vector<std::string> missing;
  for (const auto& u : sys.used_unknowns())
    if (!assignment.count(u)) missing.push_back(u);
  if (!missing.empty()) throw std::invalid_argument("assignment is missing " + join(missing, ", "));
  std::vector<Scalar> point;
  for (const auto& u : sys.unknowns) {
    auto it = assignment.find(u);
    point.push_back(it == assignment.end() ? Scalar() : it->second);
  }
  CheckResult out;
  for (std::size_t k = 0; k < sys.equations.size(); ++k) {
    Scalar v = sys.equations[k].poly.evaluate(point);
    if (!v.is_zero()) out.residuals.push_back({k, v});
  }
  out.ok = out.residuals.empty();
  return out;
}

std::map<std::string, Scalar> parse_assignment(const std::string& text) {
  // items separated by commas or newlines; '#' starts a comment
  std::vector<std::string> items;
  {
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
      auto h = line.find('#');
      if (h != std::string::npos) line.erase(h);
      std::string cur;
      int depth = 0;
      for (char ch : line) {
        if (ch == '{' || ch == '}') continue;
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == ',' && depth == 0) {
          items.push_back(trim(cur));
          cur.clear();
        } else {
          cur += ch;
        }
      }
      items.push_back(trim(cur));
    }
  }
  std::vector<std::pair<std::string, ExprPtr>> entries;
  std::map<std::string, Scalar> sets;
  std::optional<Scalar> fallback;
  auto set_lookup = [&](const std::string& id) -> Scalar {
    auto it = sets.find(id);
    if (it == sets.end()) throw std::invalid_argument("'" + id + "' is not instantiated");
    return it->second;
  };
  for (const auto& item : items) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("assignment: expected 'name = value' in '" + item + "'");
    std::string lhs = trim(item.substr(0, eq)), rhs = trim(item.substr(eq + 1));
    if (lhs.rfind("set ", 0) == 0) {
      std::string name = trim(lhs.substr(4));
      Scalar v = evaluate(*parse_expr(rhs), set_lookup);
      if (name == "*")
        fallback = v;
      else
        sets[name] = v;
      continue;
    }
    if (lhs.empty() || lhs.find(' ') != std::string::npos) throw ParseError("assignment: bad name '" + lhs + "'");
    entries.emplace_back(lhs, parse_expr(rhs));
  }
  std::set<std::string> free;
  for (const auto& [name, e] : entries)
    if (e->kind == Expr::Kind::Var && e->name == name) free.insert(name);
  auto lookup = [&](const std::string& id) -> Scalar {
    if (auto it = sets.find(id); it != sets.end()) return it->second;
    if (free.count(id) && fallback) return *fallback;
    if (free.count(id)) throw std::invalid_argument("free parameter '" + id + "' needs a 'set' value");
    throw std::invalid_argument("'" + id + "' is not a free parameter of the assignment");
  };
  std::map<std::string, Scalar> out;
  for (const auto& [name, e] : entries) {
    if (out.count(name)) throw ParseError("assignment: '" + name + "' given twice");
    out[name] = evaluate(*e, lookup);
  }
  return out;
}

Sigma1NormalForm normalize_sigma1(const Poly& s1) {
  std::size_t n = s1.nvars();
  if (s1.is_zero()) throw std::invalid_argument("normalize_sigma1: zero sigma_1");
  if (!s1.is_homogeneous(1)) throw std::invalid_argument("normalize_sigma1: sigma_1 is not linear homogeneous");
  std::vector<Scalar> c(n);
  for (std::size_t i = 0; i < n; ++i) c[i] = s1.coeff(Monomial::variable(n, i));
  std::size_t k = 0;
  while (c[k].is_zero()) ++k;
  // y = M x with y1 = s1 and the other y's the remaining coordinates
  ScalarMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(0, i) = c[i];
  for (std::size_t r = 1, i = 0; i < n; ++i)
    if (i != k) m(r++, i) = Scalar(1);
  ScalarMatrix t = inverse(m);
  return {substitute_linear(s1, t), t};
}

std::string to_string(Sigma2Shape s) {
  switch (s) {
    case Sigma2Shape::Full: return "Full";
    case Sigma2Shape::Rank2: return "Rank2";
    case Sigma2Shape::Product: return "Product";
    case Sigma2Shape::ProductPlus: return "ProductPlus";
    case Sigma2Shape::Degenerate: return "Degenerate";
  }
  return "?";
}

Poly canonical_sigma2(std::size_t n, Sigma2Shape shape, const Scalar& alpha, const std::vector<int>& signs) {
  auto y = [n](std::size_t i) { return Poly::variable(n, i); };
  auto sq = [&](std::size_t i, int s) { return y(i) * y(i) * Scalar(s); };
  switch (shape) {
    case Sigma2Shape::Full: return y(0) * y(0) * alpha + sq(1, signs.at(0)) + sq(2, signs.at(1));
    case Sigma2Shape::Rank2: return y(0) * y(0) * alpha + sq(1, signs.at(0));
    case Sigma2Shape::Product: return y(0) * y(1);
    case Sigma2Shape::ProductPlus: return y(0) * y(1) + sq(2, signs.at(0));
    case Sigma2Shape::Degenerate: return y(0) * y(0) * alpha;
  }
  return Poly(n);
}

namespace {

// Symmetric matrix of a quadratic form.
Matrix<Scalar> gram(const Poly& q) {
  std::size_t n = q.nvars();
  Matrix<Scalar> a(n, n);
  for (const auto& t : q.terms()) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      for (std::uint32_t e = 0; e < t.mono[i]; ++e) idx.push_back(i);
    if (idx[0] == idx[1]) {
      a(idx[0], idx[0]) = t.coeff;
    } else {
      Scalar h = t.coeff * Scalar(1, 2);
      a(idx[0], idx[1]) = h;
      a(idx[1], idx[0]) = h;
    }
  }
  return a;
}

}  // namespace

Sigma2NormalForm normalize_sigma2(const Poly& s2) {
  std::size_t n = s2.nvars();
  if (n < 2 || n > 3) throw std::invalid_argument("normalize_sigma2: only n = 2, 3");
  if (!s2.is_homogeneous(2)) throw std::invalid_argument("normalize_sigma2: not a homogeneous quadratic");

  // x = t v; every substitution v = s w keeps row 0 equal to e1
  ScalarMatrix t = scalar_identity(n);
  Poly q = s2;
  auto apply = [&](const ScalarMatrix& s) {
    q = substitute_linear(q, s);
    t = t * s;
  };
  std::vector<std::size_t> free;
  for (std::size_t i = 1; i < n; ++i) free.push_back(i);
  std::vector<std::pair<std::size_t, Scalar>> squares;  // slot, coefficient
  std::optional<std::size_t> product;

  while (!free.empty()) {
    auto a = gram(q);
    std::optional<std::size_t> pivot;
    for (auto it = free.rbegin(); it != free.rend() && !pivot; ++it)
      if (!a(*it, *it).is_zero()) pivot = *it;
    if (pivot) {
      // v_p = w_p - sum_j a_pj / a_pp w_j
      std::size_t p = *pivot;
      ScalarMatrix s = scalar_identity(n);
      Scalar inv = a(p, p).inverse();
      for (std::size_t j = 0; j < n; ++j)
        if (j != p) s(p, j) = -a(p, j) * inv;
      apply(s);
      squares.emplace_back(p, a(p, p));
      free.erase(std::find(free.begin(), free.end(), p));
      continue;
    }
    std::optional<std::pair<std::size_t, std::size_t>> cross;
    for (std::size_t i = 0; i < free.size() && !cross; ++i)
      for (std::size_t j = i + 1; j < free.size() && !cross; ++j)
        if (!a(free[i], free[j]).is_zero()) cross = {free[i], free[j]};
    if (cross) {
      // v_p = w_p + w_q, v_q = w_p - w_q
      auto [p, r] = *cross;
      ScalarMatrix s = scalar_identity(n);
      s(p, r) = Scalar(1);
      s(r, p) = Scalar(1);
      s(r, r) = Scalar(-1);
      apply(s);
      continue;
    }
    std::optional<std::size_t> p;
    for (auto it = free.rbegin(); it != free.rend() && !p; ++it)
      if (!a(0, *it).is_zero()) p = *it;
    if (p) {
      // w_p = a11 v1 + 2 sum_j a1j v_j, so q = v1 w_p
      ScalarMatrix s = scalar_identity(n);
      Scalar inv = (Scalar(2) * a(0, *p)).inverse();
      s(*p, *p) = inv;
      s(*p, 0) = -a(0, 0) * inv;
      for (auto j : free)
        if (j != *p) s(*p, j) = -Scalar(2) * a(0, j) * inv;
      apply(s);
      product = *p;
      free.erase(std::find(free.begin(), free.end(), *p));
    }
    break;
  }

  // scale the squares to +-1
  {
    ScalarMatrix s = scalar_identity(n);
    for (const auto& [slot, c] : squares) {
      if (!c.is_rational()) throw std::domain_error("normalize_sigma2: irrational square coefficient");
      Rational ab = abs(c.rational_part());
      s(slot, slot) = Scalar::sqrt(ab).inverse();
    }
    apply(s);
  }

  // slot order: product variable, squares by index, untouched coordinates
  std::sort(squares.begin(), squares.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<std::size_t> order = {0};
  if (product) order.push_back(*product);
  for (const auto& sq : squares) order.push_back(sq.first);
  for (auto f : free) order.push_back(f);
  // v_{order[k]} = w_k
  ScalarMatrix perm(n, n);
  for (std::size_t k = 0; k < n; ++k) perm(order[k], k) = Scalar(1);
  apply(perm);

  Sigma2NormalForm out;
  auto x1 = Monomial::variable(n, 0);
  out.alpha = q.coeff(x1 * x1);
  for (const auto& sq : squares) out.signs.push_back(sq.second.sign());
  if (product)
    out.shape = squares.empty() ? Sigma2Shape::Product : Sigma2Shape::ProductPlus;
  else if (squares.size() == 2)
    out.shape = Sigma2Shape::Full;
  else if (squares.size() == 1)
    out.shape = Sigma2Shape::Rank2;
  else
    out.shape = Sigma2Shape::Degenerate;
  if (product) out.alpha = Scalar();
  out.form = q;
  out.change = t;
  return out;
}

RootReport rational_roots(const Poly& p, std::size_t v) {
  if (p.is_zero()) throw std::invalid_argument("rational_roots of the zero polynomial");
  std::vector<Rational> c(static_cast<std::size_t>(p.degree()) + 1);
  for (const auto& t : p.terms()) {
    for (std::size_t i = 0; i < t.mono.nvars(); ++i)
      if (i != v && t.mono[i]) throw std::invalid_argument("rational_roots: polynomial is not univariate");
    if (!t.coeff.is_rational()) throw std::invalid_argument("rational_roots: irrational coefficient");
    c[t.mono[v]] = t.coeff.rational_part();
  }
  // integer coefficients, low degree first
  mpz_class l = 1;
  for (const auto& r : c) l = lcm(l, mpz_class(r.get_den()));
  std::vector<mpz_class> z;
  for (const auto& r : c) z.push_back(mpz_class(r * l));
  RootReport out;
  std::size_t zeros = 0;
  while (z[zeros] == 0) ++zeros;
  if (zeros) out.roots.push_back(0);
  z.erase(z.begin(), z.begin() + zeros);

  auto divisors = [](mpz_class m) {
    m = abs(m);
    std::vector<mpz_class> d;
    for (mpz_class k = 1; k * k <= m; ++k)
      if (m % k == 0) {
        d.push_back(k);
        if (k * k != m) d.push_back(m / k);
      }
    return d;
  };
  std::size_t found = zeros;
  std::vector<Rational> cands;
  for (const auto& a : divisors(z.front()))
    for (const auto& b : divisors(z.back())) {
      Rational r(a, b);
      r.canonicalize();
      cands.push_back(r);
      cands.push_back(-r);
    }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  // deflate with exact rational arithmetic to count multiplicities
  std::vector<Rational> cur(z.begin(), z.end());
  for (const auto& r : cands) {
    bool hit = false;
    while (cur.size() > 1) {
      Rational acc = 0;
      for (auto it = cur.rbegin(); it != cur.rend(); ++it) acc = acc * r + *it;
      if (acc != 0) break;
      // synthetic division by (v - r)
      std::vector<Rational> qd(cur.size() - 1);
      Rational carry = 0;
      for (std::size_t i = cur.size() - 1; i-- > 0;) {
        carry = cur[i + 1] + carry * r;
        qd[i] = carry;
      }
      cur = qd;
      hit = true;
      ++found;
    }
    if (hit) out.roots.push_back(r);
  }
  std::sort(out.roots.begin(), out.roots.end());
  out.complete = found == c.size() - 1;
  return out;
}

}  // namespace nij
