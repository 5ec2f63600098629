#include "nij/cli.hpp"

#include "nij/catalog.hpp"
#include "nij/expr.hpp"
#include "nij/reconstruct.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace nij {

using json = nlohmann::ordered_json;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

// Nonblank, non-comment lines; an optional "vars: a, b, c" line names the variables.
struct LineFile {
  std::vector<std::string> vars;
  std::vector<std::string> lines;
};

LineFile read_lines(const std::string& path) {
  std::istringstream in(read_file(path));
  LineFile f;
  for (std::string line; std::getline(in, line);) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    if (line.rfind("vars:", 0) == 0) {
      for (auto& v : split(line.substr(5), ',')) f.vars.push_back(v);
      continue;
    }
    f.lines.push_back(line);
  }
  if (f.lines.empty()) throw InputError(path + ": no data lines");
  return f;
}

std::vector<std::string> names_for(const LineFile& f, std::size_t n, const std::string& path) {
  if (f.vars.empty()) return default_names(n);
  if (f.vars.size() != n) throw InputError(path + ": vars line names " + std::to_string(f.vars.size()) + " variables, expected " + std::to_string(n));
  return f.vars;
}

Poly parse_in(const std::string& text, const std::vector<std::string>& names) {
  try {
    return parse_poly(text, names);
  } catch (const std::exception& e) {
    throw InputError("cannot parse '" + text + "': " + e.what());
  }
}

json report_json(const VerifyReport& r) {
  json j;
  j["id"] = r.id;
  if (r.sign_variant) j["sign_variant"] = *r.sign_variant;
  j["ok"] = r.ok();
  json checks = json::array();
  for (const auto& c : r.checks) {
    json cj{{"name", c.name}, {"ok", c.ok}};
    if (!c.detail.empty()) cj["detail"] = c.detail;
    checks.push_back(cj);
  }
  j["checks"] = checks;
  return j;
}

std::string label(const VerifyReport& r) { return r.id + (r.sign_variant ? " [" + *r.sign_variant + "]" : ""); }

void print_report(const VerifyReport& r, std::ostream& out) {
  out << (r.ok() ? "ok    " : "FAIL  ") << label(r) << "\n";
  for (const auto& c : r.checks)
    if (!c.ok || !c.detail.empty()) out << "      " << c.name << (c.ok ? ": " : " failed: ") << c.detail << "\n";
}

std::string default_catalog() {
  std::string local = "data/catalog.json";
#ifdef NIJ_DEFAULT_CATALOG
  if (!std::filesystem::exists(local)) return NIJ_DEFAULT_CATALOG;
#endif
  return local;
}

void print_operator(const PolyMatrix& m, const std::vector<std::string>& names, std::ostream& out) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << "  [";
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? ", " : "") << render(m(r, c), names);
    out << "]\n";
  }
}

json operator_json(const PolyMatrix& m, const std::vector<std::string>& names) {
  json a = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(render(m(r, c), names));
    a.push_back(row);
  }
  return a;
}

std::map<std::string, Scalar> zero_values(const std::vector<std::string>& names) {
  std::map<std::string, Scalar> m;
  for (const auto& n : names)
    if (!n.empty()) m[n] = Scalar();
  return m;
}

LinearitySystem system_for_case(const std::string& tag, const std::vector<std::string>& zero) {
  ParamSigmaSet ps;
  try {
    ps = case_sigmas(tag);
  } catch (const std::invalid_argument& e) {
    std::string tags;
    for (const auto& t : case_tags()) tags += (tags.empty() ? "" : ", ") + t;
    throw InputError("unknown case '" + tag + "' (known: " + tags + ")");
  }
  for (const auto& z : zero)
    if (std::find(ps.params.begin(), ps.params.end(), z) == ps.params.end())
      throw InputError("case " + tag + " has no parameter " + z);
  return generate_linearity_system(zero.empty() ? ps : ps.with_values(zero_values(zero)));
}

int cmd_verify(const std::string& path, const std::vector<std::string>& ids, bool as_json, std::ostream& out) {
  auto cat = load_catalog(path);
  std::vector<const CatalogEntry*> sel;
  if (ids.empty()) {
    for (const auto& e : cat) sel.push_back(&e);
  } else {
    for (const auto& id : ids) {
      auto found = find_entries(cat, id);
      if (found.empty()) throw InputError("no catalog entry " + id);
      sel.insert(sel.end(), found.begin(), found.end());
    }
  }
  auto reports = verify_all(sel, cat, worker_count());
  std::size_t failures = 0;
  for (const auto& r : reports) failures += !r.ok();
  if (as_json) {
    json j;
    j["catalog"] = std::filesystem::path(path).filename().string();
    j["verified"] = reports.size();
    j["failures"] = failures;
    json a = json::array();
    for (const auto& r : reports) a.push_back(report_json(r));
    j["entries"] = a;
    out << j.dump(2) << "\n";
  } else {
    for (const auto& r : reports) print_report(r, out);
    out << reports.size() << " entries verified, " << failures << " failures\n";
  }
  return failures ? kExitFailure : kExitOk;
}

int cmd_reconstruct(const std::string& path, bool as_json, std::ostream& out) {
  auto f = read_lines(path);
  std::size_t n = f.lines.size();
  auto names = names_for(f, n, path);
  SigmaSet sigmas;
  for (const auto& l : f.lines) sigmas.push_back(parse_in(l, names));
  json j;
  j["sigmas"] = json::array();
  for (const auto& s : sigmas) j["sigmas"].push_back(render(s, names));
  try {
    auto r = reconstruct_operator(sigmas);
    if (r.linear_part) {
      j["status"] = "linear";
      j["operator"] = operator_json(*r.linear_part, names);
      if (as_json) {
        out << j.dump(2) << "\n";
      } else {
        out << "operator:\n";
        print_operator(*r.linear_part, names, out);
      }
      return kExitOk;
    }
    j["status"] = "not_linear";
    j["denominator"] = render(r.denominator, names);
    json fails = json::array();
    for (const auto& fl : r.failures)
      fails.push_back({{"row", fl.row + 1}, {"col", fl.col + 1}, {"numerator", render(fl.numerator, names)},
                       {"remainder", render(fl.remainder, names)}});
    j["failures"] = fails;
    if (as_json) {
      out << j.dump(2) << "\n";
    } else {
      out << "not linear: " << r.failures.size() << " entries are not divisible by det J = "
          << render(r.denominator, names) << "\n";
      for (const auto& fl : r.failures)
        out << "  entry (" << fl.row + 1 << "," << fl.col + 1 << ") = (" << render(fl.numerator, names) << ")/("
            << render(r.denominator, names) << "), remainder " << render(fl.remainder, names) << "\n";
    }
    return kExitFailure;
  } catch (const DependentSigmas& e) {
    j["status"] = "dependent";
    j["count"] = e.count;
    j["message"] = e.what();
    if (as_json)
      out << j.dump(2) << "\n";
    else
      out << "dependent sigmas: det J = 0 identically (" << e.what() << ")\n";
    return kExitFailure;
  }
}

int cmd_gen_system(const std::string& tag, const std::vector<std::string>& zero, const std::string& out_path,
                   std::ostream& out) {
  auto sys = system_for_case(tag, zero);
  std::string text = render_system(sys);
  if (out_path.empty()) {
    out << text;
  } else {
    std::ofstream f(out_path);
    if (!f) throw InputError("cannot write " + out_path);
    f << text;
    out << sys.equations.size() << " equations written to " << out_path << "\n";
  }
  return kExitOk;
}

int cmd_check_solution(const std::string& system, const std::string& assignment, const std::vector<std::string>& zero,
                       std::ostream& out) {
  LinearitySystem sys = std::filesystem::is_regular_file(system) ? read_system(read_file(system))
                                                                  : system_for_case(system, zero);
  std::map<std::string, Scalar> values;
  try {
    values = parse_assignment(read_file(assignment));
  } catch (const InputError&) {
    throw;
  } catch (const std::exception& e) {
    throw InputError(assignment + ": " + e.what());
  }
  CheckResult r;
  try {
    r = check_solution(sys, values);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  out << sys.equations.size() << " equations, " << r.residuals.size() << " nonzero residuals\n";
  for (const auto& res : r.residuals) {
    const auto& eq = sys.equations[res.equation];
    out << "  [" << res.equation + 1 << "] entry " << eq.entry << " (" << eq.row << "," << eq.col << "), monomial "
        << render(eq.monomial, default_names(sys.n)) << ": " << res.value << "\n";
  }
  return r.ok ? kExitOk : kExitFailure;
}

int cmd_generalize(const std::string& family, std::size_t n, const std::vector<int>& signs_in, bool as_json,
                   std::ostream& out) {
  CatalogEntry e;
  try {
    if (family == "L1") {
      e = generalized_L1(n);
    } else if (family == "L2") {
      e = generalized_L2(n);
    } else if (family == "blocks") {
      auto signs = signs_in;
      if (signs.empty() && n >= 3) signs.assign((n - 1) / 2, 1);
      e = generalized_blocks(n, signs);
    } else {
      throw InputError("unknown family '" + family + "' (known: L1, L2, blocks)");
    }
  } catch (const std::invalid_argument& ex) {
    throw InputError(ex.what());
  }
  auto r = verify_entry(e);
  if (as_json) {
    json j;
    j["entry"] = json::parse(entry_json(e));
    j["report"] = report_json(r);
    out << j.dump(2) << "\n";
  } else {
    out << e.id << "\noperator:\n";
    print_operator(e.op, e.vars, out);
    out << "sigmas:\n";
    for (std::size_t i = 0; i < e.sigmas.size(); ++i) out << "  sigma_" << i + 1 << " = " << render(e.sigmas[i], e.vars) << "\n";
    print_report(r, out);
  }
  return r.ok() ? kExitOk : kExitFailure;
}

int cmd_torsion(const std::string& path, std::ostream& out) {
  auto f = read_lines(path);
  std::size_t n = f.lines.size();
  auto names = names_for(f, n, path);
  PolyMatrix m = zero_matrix(n, n, n);
  for (std::size_t r = 0; r < n; ++r) {
    auto cells = split(f.lines[r], ',');
    if (cells.size() != n) throw InputError(path + ": row " + std::to_string(r + 1) + " has " + std::to_string(cells.size()) + " entries, expected " + std::to_string(n));
    for (std::size_t c = 0; c < n; ++c) m(r, c) = parse_in(cells[c], names);
  }
  auto t = torsion(m);
  if (t.is_zero()) {
    out << "torsion vanishes identically\n";
    return kExitOk;
  }
  out << "nonzero torsion components:\n";
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (!t(i, j, k).is_zero())
          out << "  N^" << i + 1 << "_" << j + 1 << k + 1 << " = " << render(t(i, j, k), names) << "\n";
  return kExitFailure;
}

}  // namespace

unsigned worker_count() {
  if (const char* w = std::getenv("NIJ_WORKERS")) {
    char* end = nullptr;
    long v = std::strtol(w, &end, 10);
    if (end != w && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verification tools for Nijenhuis operators and left-symmetric algebras", "nijenhuis"};
  app.require_subcommand(1);

  std::string catalog = default_catalog();
  std::vector<std::string> ids;
  bool as_json = false;
  auto* verify = app.add_subcommand("verify-tables", "verify every catalog entry (or the ones named)");
  verify->add_option("--entry", ids, "entry id; repeatable ('+' may stand for the direct sum sign)");
  verify->add_option("--catalog", catalog, "catalog file")->capture_default_str();
  verify->add_flag("--json", as_json, "machine-readable report");

  std::string file;
  auto* recon = app.add_subcommand("reconstruct", "rebuild the operator from sigma_1..sigma_n, one per line");
  recon->add_option("file", file, "sigma file")->required();
  recon->add_flag("--json", as_json, "machine-readable output");

  std::string tag, out_path;
  std::vector<std::string> zero;
  auto* gen = app.add_subcommand("gen-system", "linearity system for a case of the 3D classification");
  gen->add_option("case", tag, "case tag")->required();
  gen->add_option("--out", out_path, "write the listing here");
  gen->add_option("--zero", zero, "parameters set to zero")->delimiter(',');

  std::string system, assignment;
  auto* check = app.add_subcommand("check-solution", "evaluate a system at an assignment");
  check->add_option("system", system, "system listing file, or a case tag")->required();
  check->add_option("assignment", assignment, "assignment file")->required();
  check->add_option("--zero", zero, "parameters set to zero when a case tag is given")->delimiter(',');

  std::string family;
  std::size_t n = 0;
  std::vector<int> signs;
  auto* gz = app.add_subcommand("generalize", "n-dimensional generalization with its verification");
  gz->add_option("family", family, "L1, L2 or blocks")->required();
  gz->add_option("n", n, "dimension")->required();
  gz->add_option("--signs", signs, "block signs, e.g. 1,-1")->delimiter(',');
  gz->add_flag("--json", as_json, "machine-readable output");

  auto* tor = app.add_subcommand("torsion", "Nijenhuis torsion of an operator, one row per line");
  tor->add_option("file", file, "operator file")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitDataError;
  }

  try {
    if (*verify) return cmd_verify(catalog, ids, as_json, out);
    if (*recon) return cmd_reconstruct(file, as_json, out);
    if (*gen) return cmd_gen_system(tag, zero, out_path, out);
    if (*check) return cmd_check_solution(system, assignment, zero, out);
    if (*gz) return cmd_generalize(family, n, signs, as_json, out);
    if (*tor) return cmd_torsion(file, out);
  } catch (const DataError& e) {
    err << "data error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitDataError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitDataError;
  }
  return kExitDataError;
}

}  // namespace nij
