#include "nij/cases.hpp"

#include "nij/expr.hpp"

#include <algorithm>
#include <climits>
#include <set>

namespace nij {

namespace {

std::size_t index_of(const std::vector<std::string>& names, const std::string& name) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw std::invalid_argument("no variable " + name);
  return static_cast<std::size_t>(it - names.begin());
}

// p with variable v replaced by the polynomial image.
Poly replace(const Poly& p, std::size_t v, const Poly& image) {
  std::vector<Poly> images;
  for (std::size_t i = 0; i < p.nvars(); ++i) images.push_back(i == v ? image : Poly::variable(p.nvars(), i));
  return p.substitute(images);
}

bool has_parameter_free_coefficient(const Poly& p, std::size_t n) {
  for (const auto& [m, c] : split_by_leading_vars(p, n))
    if (c.is_constant()) return true;
  return false;
}

}  // namespace

Case3Report case3_obstruction() {
  Case3Report r;
  r.sigmas = case_sigmas("3").with_values({{"b_21", Scalar(1, 3)},
                                          {"c", Scalar()},
                                          {"b_31", Scalar()},
                                          {"b_22", Scalar()},
                                          {"b_23", Scalar()},
                                          {"b_32", Scalar()},
                                          {"b_33", Scalar()}});
  auto names = r.sigmas.names();
  std::size_t nv = names.size();
  auto rec = reconstruct_operator(r.sigmas.sigmas);
  r.numerator = rec.numerators(2, 1);
  r.denominator = rec.denominator;
  r.printed = parse_poly("(3*b_12^2 + b_11)*x1^2 + 5*b_12*x1*x2 + x2^2 + 2*b_13*x1*x3", names);
  Poly den = parse_poly("b_13*x1", names);
  r.matches_printed = r.numerator * den == -(r.denominator * r.printed);
  r.off_x1 = replace(r.printed, 0, Poly(nv));
  r.obstructed = r.matches_printed && has_parameter_free_coefficient(r.off_x1, 3);
  return r;
}

Case2Report case2_obstruction(int sign) {
  Case2Report r;
  r.sign = sign;
  ParamSigmaSet ps = case_sigmas(sign > 0 ? "2.1" : "2.2")
                         .with_values({{"c", Scalar()},
                                       {"b_31", Scalar()},
                                       {"b_12", Scalar()},
                                       {"b_13", Scalar()},
                                       {"b_32", Scalar()},
                                       {"b_33", Scalar()}});
  auto names = ps.names();
  std::size_t nv = names.size();
  Poly b11 = parse_poly("(4*a^2 - a)/3", names);
  for (auto& s : ps.sigmas) s = replace(s, index_of(names, "b_11"), b11);
  r.sigmas = ps;
  auto rec = reconstruct_operator(ps.sigmas);
  r.denominator = rec.denominator;
  Poly n32 = rec.numerators(2, 1);
  // cancel the common power of x2; the reduced Q still vanishes on x2 = 0,
  // so a linear entry needs the reduced N(3,2) to vanish there too
  std::uint32_t k = UINT32_MAX;
  for (const Poly* p : {&n32, &r.denominator})
    for (const auto& t : p->terms()) k = std::min(k, t.mono[1]);
  Poly x2k = Poly::variable(nv, 1).pow(k);
  Poly num = exact_divide(n32, x2k).quotient, den = exact_divide(r.denominator, x2k).quotient;
  bool q_on_x2 = replace(den, 1, Poly(nv)).is_zero();
  for (const auto& [m, c] : split_by_leading_vars(replace(num, 1, Poly(nv)), 3)) r.conditions.push_back(c);
  std::size_t b23 = index_of(ps.params, "b_23");
  for (const auto& c : r.conditions) {
    if (c.size() != 1) continue;
    const auto& m = c.leading().mono;
    bool only_b23 = m[b23] > 0;
    for (std::size_t i = 0; i < m.nvars(); ++i)
      if (i != b23 && m[i]) only_b23 = false;
    if (only_b23) {
      r.forcing = c;
      break;
    }
  }
  r.det_vanishes = replace(r.denominator, 3 + b23, Poly(nv)).is_zero();
  r.obstructed = q_on_x2 && r.forcing && r.det_vanishes;
  return r;
}

Case4Report case4_obstruction(int sign) {
  Case4Report r;
  r.sign = sign;
  auto ps = case_sigmas(sign > 0 ? "4.1" : "4.2").with_values({{"b_22", Scalar()}, {"b_23", Scalar()}});
  r.system = generate_linearity_system(ps);
  const auto& u = r.system.unknowns;
  std::size_t nu = u.size();
  Poly target = parse_poly("6*b_21^2 - b_21", u);
  for (std::size_t k = 0; k < r.system.equations.size() && !r.quadratic; ++k) {
    auto d = exact_divide(r.system.equations[k].poly, target);
    if (d.exact() && d.quotient.is_constant()) r.quadratic = k;
  }
  std::size_t b21 = index_of(u, "b_21"), b32 = index_of(u, "b_32");
  std::set<Rational> values;
  for (std::size_t k = 0; k < r.system.equations.size(); ++k) {
    Poly e = replace(r.system.equations[k].poly, b21, Poly::constant(nu, Scalar(1, 6)));
    if (e.is_zero()) continue;
    if (e.is_constant()) {
      r.contradiction = true;  // a nonzero constant cannot vanish
      continue;
    }
    bool only_b32 = e.degree() == 1;
    for (const auto& t : e.terms())
      for (std::size_t i = 0; i < nu; ++i)
        if (i != b32 && t.mono[i]) only_b32 = false;
    if (!only_b32) continue;
    Scalar lin = e.coeff(Monomial::variable(nu, b32)), c0 = e.coeff(Monomial(nu));
    if (!lin.is_rational() || !c0.is_rational()) continue;
    Rational v = -c0.rational_part() / lin.rational_part();
    r.b32_constraints.emplace_back(k, v);
    values.insert(v);
  }
  if (values.size() > 1) r.contradiction = true;
  r.contradiction = r.contradiction && r.quadratic.has_value();
  return r;
}

}  // namespace nij
