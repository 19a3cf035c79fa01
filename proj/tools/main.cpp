#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "report.hpp"
#include "stokeskit/errors.hpp"
#include "stokeskit/families.hpp"
#include "stokeskit/formal.hpp"
#include "stokeskit/montrace.hpp"
#include "stokeskit/newton.hpp"
#include "stokeskit/parser.hpp"
#include "stokeskit/qde.hpp"
#include "stokeskit/rh3.hpp"
#include "stokeskit/stokes.hpp"

using namespace stokeskit;
using namespace stokeskit::cli;

namespace {

using C = std::complex<double>;

/// Thrown for flag-level problems; exit 2 like DomainError.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string out;
  bool timing = false;
};

struct FamilyArgs {
  std::string family;
  int p = 0, q = 0, n = 0;
  std::string mu, nu, a, lambda, t, closure, closure_sign = "plus", op;
  std::vector<std::string> binds;
};

Bindings bindings(const std::vector<std::string>& binds) {
  Bindings b;
  for (const auto& kv : binds) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw UsageError("--bind expects name=value, got '" + kv + "'");
    b[kv.substr(0, eq)] = parse_scalar(kv.substr(eq + 1));
  }
  return b;
}

std::vector<GaussianRational> scalars(const std::string& text, const std::string& flag) {
  if (text.empty()) throw UsageError(flag + " is required");
  return parse_scalar_list(text);
}

void add_family(CLI::App* app, FamilyArgs& f, std::vector<std::string> families) {
  app->add_option("--family", f.family, "family")->required()->check(CLI::IsMember(families));
  app->add_option("-p", f.p, "pDq: p");
  app->add_option("-q", f.q, "pDq: q");
  app->add_option("--mu", f.mu, "pDq: comma-separated mu");
  app->add_option("--nu", f.nu, "pDq: comma-separated nu");
  app->add_option("--closure-sign", f.closure_sign, "pDq: plus|minus")->check(CLI::IsMember({"plus", "minus"}));
  app->add_option("-n", f.n, "ramified: dimension");
  app->add_option("-a", f.a, "ramified: comma-separated a (sum 0)");
  app->add_option("--closure", f.closure, "ramified: chain closure (default (-1)^(n-1))");
  app->add_option("--lambda", f.lambda, "unramified: comma-separated distinct lambda");
  app->add_option("--t", f.t, "unramified: off-diagonal T, rows separated by ';'");
  app->add_option("--op", f.op, "operator: expression in z and delta");
  app->add_option("--bind", f.binds, "operator: name=value (repeatable)");
}

json family_inputs(const FamilyArgs& f) {
  json in{{"family", f.family}};
  if (f.family == "pdq") {
    in["p"] = f.p;
    in["q"] = f.q;
    in["mu"] = list_json(parse_scalar_list(f.mu));
    in["nu"] = list_json(parse_scalar_list(f.nu));
    in["closure_sign"] = f.closure_sign;
  } else if (f.family == "ramified") {
    in["n"] = f.n;
    if (!f.a.empty()) in["a"] = list_json(parse_scalar_list(f.a));
    if (!f.closure.empty()) in["closure"] = to_json(parse_scalar(f.closure));
  } else if (f.family == "unramified") {
    in["lambda"] = list_json(parse_scalar_list(f.lambda));
    if (!f.t.empty()) in["t"] = f.t;
  } else if (f.family == "op") {
    in["op"] = f.op;
    if (!f.binds.empty()) in["bind"] = f.binds;
  }
  return in;
}

FormalData<Cyclotomic> formal_of(const FamilyArgs& f) {
  if (f.family == "pdq")
    return formal_pDq<Cyclotomic>(f.p, f.q, scalars(f.mu, "--mu"), scalars(f.nu, "--nu"),
                                  f.closure_sign == "minus" ? ClosureSign::Minus : ClosureSign::Plus);
  if (f.family == "ramified") {
    const Cyclotomic closure =
        f.closure.empty() ? ramified_family_closure<Cyclotomic>(f.n) : Cyclotomic(parse_scalar(f.closure));
    return formal_ramified<Cyclotomic>(f.n, closure);
  }
  if (f.family == "unramified") {
    std::vector<Cyclotomic> l;
    for (const auto& v : scalars(f.lambda, "--lambda")) l.emplace_back(v);
    return formal_unramified<Cyclotomic>(l);
  }
  throw UsageError("--family " + f.family + " has no formal data");
}

Mat<GaussianRational> parse_matrix(const std::string& text, int n) {
  Mat<GaussianRational> m = Mat<GaussianRational>::Constant(n, n, GaussianRational(0));
  if (text.empty()) return m;
  std::stringstream rows(text);
  std::string row;
  int r = 0;
  while (std::getline(rows, row, ';')) {
    if (r >= n) throw UsageError("--t has more than " + std::to_string(n) + " rows");
    const auto vals = parse_scalar_list(row);
    if (static_cast<int>(vals.size()) != n) throw UsageError("--t row " + std::to_string(r + 1) + " needs " + std::to_string(n) + " entries");
    for (int c = 0; c < n; ++c) m(r, c) = vals[c];
    ++r;
  }
  if (r != n) throw UsageError("--t needs " + std::to_string(n) + " rows");
  return m;
}

MatrixSystem system_of(const FamilyArgs& f) {
  if (f.family == "pdq") return to_system(build_pDq(f.p, f.q, scalars(f.mu, "--mu"), scalars(f.nu, "--nu")));
  if (f.family == "ramified")
    return ramified_family(f.n, f.a.empty() ? std::vector<GaussianRational>(std::max(f.n, 0), GaussianRational(0))
                                            : parse_scalar_list(f.a));
  if (f.family == "unramified") {
    const auto l = scalars(f.lambda, "--lambda");
    return unramified_family(l, parse_matrix(f.t, static_cast<int>(l.size())));
  }
  if (f.op.empty()) throw UsageError("--op is required for --family op");
  return to_system(parse_operator(f.op, bindings(f.binds)));
}

json formal_json(const FormalData<Cyclotomic>& f) {
  json blocks = json::array();
  for (const auto& b : f.blocks) blocks.push_back({{"q", b.q.to_string()}, {"dim", b.dim}, {"labels", b.labels}});
  return {{"dimension", f.dimension()},
          {"blocks", blocks},
          {"gamma", matrix_json(f.gamma)},
          {"block_permutation", f.block_permutation},
          {"irregularity", to_json(irregularity(f))},
          {"katz", to_json(katz_invariant(f))}};
}

json direction_json(const Direction& d) {
  json j{{"value", d.value}};
  if (d.exact) j["d"] = to_string(*d.exact);
  return j;
}

template <class K>
json factors_json(const StokesSolution<K>& s) {
  json out = json::array();
  for (const auto& f : s.factors) {
    json j = direction_json(f.shape.d);
    j["unknowns"] = f.shape.unknowns();
    j["matrix"] = matrix_json(f.matrix);
    out.push_back(std::move(j));
  }
  return out;
}

template <class K>
void solution_json(json& out, const StokesSolution<K>& s) {
  for (const auto& [name, v] : s.values) out[name] = to_json(v);
  out["residual"] = residual_json(s.residual);
  out["reducible"] = s.reducible;
  if (!s.note.empty()) out["note"] = s.note;
  out["normalized"] = s.normalized;
  out["target_charpoly"] = list_json(s.target);
  out["factors"] = factors_json(s);
}

struct Report {
  json j;
  explicit Report(const std::string& command, const std::vector<std::string>& argv) {
    j["schema"] = kSchema;
    j["command"] = command;
    j["argv"] = argv;
    j["inputs"] = json::object();
    j["outputs"] = json::object();
    j["residuals"] = json::object();
    j["warnings"] = json::array();
  }
};

// --- subcommands ---

void run_newton(Report& r, const std::string& op, const std::vector<std::string>& binds) {
  r.j["inputs"] = {{"op", op}};
  if (!binds.empty()) r.j["inputs"]["bind"] = binds;
  const auto parsed = parse_operator(op, bindings(binds));
  const auto poly = newton_polygon(parsed);
  json pts = json::array();
  for (const auto& [i, v] : poly.points) pts.push_back({i, v});
  json slopes = json::array();
  for (const auto& s : poly.slopes) slopes.push_back({{"slope", to_string(s.slope)}, {"mult", s.multiplicity}});
  r.j["outputs"] = {{"operator", parsed.to_string()},
                    {"degree", poly.degree()},
                    {"points", pts},
                    {"slopes", slopes},
                    {"katz", to_string(katz_invariant(poly))},
                    {"clearing_factor", poly.clearing_factor.to_string()}};
}

void run_formal(Report& r, const FamilyArgs& f) {
  r.j["inputs"] = family_inputs(f);
  r.j["outputs"] = formal_json(formal_of(f));
}

std::pair<Rational, Rational> parse_window(const std::string& w) {
  const auto comma = w.find(',');
  if (comma == std::string::npos) throw UsageError("--window expects a,b");
  return {parse_rational(w.substr(0, comma)), parse_rational(w.substr(comma + 1))};
}

void run_directions(Report& r, const FamilyArgs& f, const std::string& window) {
  r.j["inputs"] = family_inputs(f);
  r.j["inputs"]["window"] = window;
  const auto [lo, hi] = parse_window(window);
  const auto fd = formal_of(f);
  json dirs = json::array();
  for (const auto& sd : singular_directions(fd, lo, hi)) {
    json d = direction_json(sd.d);
    json pairs = json::array();
    for (const auto& p : sd.active_pairs) pairs.push_back({p.from, p.to});
    d["active_pairs"] = pairs;
    json unknowns = json::array();
    for (const auto& e : stokes_template(fd, sd.d).entries) unknowns.push_back({{"name", e.name}, {"row", e.row}, {"col", e.col}});
    d["unknowns"] = unknowns;
    dirs.push_back(std::move(d));
  }
  r.j["outputs"] = {{"directions", dirs}, {"irregularity", to_json(irregularity(fd))}};
}

void run_monodromy(Report& r, const FamilyArgs& f, std::optional<double> radius, double tol, bool clockwise) {
  r.j["inputs"] = family_inputs(f);
  const auto sys = system_of(f);
  const double rad = radius ? *radius : default_radius(sys);
  r.j["inputs"]["radius"] = rad;
  r.j["inputs"]["tol"] = tol;
  const auto m = loop_monodromy(sys, rad, tol, !clockwise);
  const auto s = spectrum(m.matrix);
  r.j["outputs"] = {{"matrix", matrix_json(m.matrix)},
                    {"charpoly", list_json(s.charpoly)},
                    {"eigenvalues", list_json(s.eigenvalues)},
                    {"steps", m.step_count}};
  r.j["residuals"] = {{"transport_error_estimate", m.error_estimate}, {"eigen_residuals", s.residuals}};
}

struct SolveArgs {
  std::vector<std::string> normalize;
  double tol = 1e-12;
  std::optional<double> radius;
  bool cross = false;
};

void run_solve(Report& r, const FamilyArgs& f, const SolveArgs& a) {
  r.j["inputs"] = family_inputs(f);
  if (f.family == "ramified") {
    const auto av = scalars(f.a, "-a");
    const bool exact = std::all_of(av.begin(), av.end(), [](const auto& v) { return v.is_real(); });
    r.j["inputs"]["mode"] = exact ? "exact" : "complex";
    if (exact) {
      const auto s = solve_ramified<Cyclotomic>(f.n, av);
      solution_json(r.j["outputs"], s);
      r.j["residuals"]["charpoly"] = residual_json(s.residual);
      if (a.cross) {
        const auto fd = formal_ramified<Cyclotomic>(f.n, ramified_family_closure<Cyclotomic>(f.n));
        const auto cc = cross_check(ramified_family(f.n, av), fd, s, a.tol, a.radius.value_or(0));
        r.j["residuals"]["cross_check"] = cc.deviation;
        r.j["residuals"]["transport_error_estimate"] = cc.monodromy_error;
      }
    } else {
      std::vector<C> ac;
      for (const auto& v : av) ac.push_back(v.to_complex());
      const auto s = solve_ramified<C>(f.n, ac);
      solution_json(r.j["outputs"], s);
      r.j["residuals"]["charpoly"] = residual_json(s.residual);
    }
    return;
  }
  if (f.family == "pdq") {
    const auto mu = scalars(f.mu, "--mu"), nu = scalars(f.nu, "--nu");
    const auto fd = formal_pDq<C>(f.p, f.q, mu, nu, f.closure_sign == "minus" ? ClosureSign::Minus : ClosureSign::Plus);
    const auto sys = to_system(build_pDq(f.p, f.q, mu, nu));
    const double rad = a.radius ? *a.radius : conditioned_radius(sys);
    const auto mono = loop_monodromy(sys, rad, a.tol);
    const auto target = numeric_target<C>(mono.matrix);
    std::vector<std::string> norm = a.normalize;
    if (norm.empty()) {
      // x_{j,0}-style: first unknown landing in each V0 coordinate
      for (int row = 0; row < f.p; ++row)
        for (const auto& t : unit_templates(fd)) {
          const auto it = std::find_if(t.entries.begin(), t.entries.end(), [&](const auto& e) { return e.row == row; });
          if (it != t.entries.end()) {
            norm.push_back(it->name);
            break;
          }
        }
    }
    r.j["inputs"]["mode"] = "complex";
    r.j["inputs"]["tol"] = a.tol;
    r.j["inputs"]["radius"] = rad;
    const auto s = solve_mixed(fd, target, norm);
    solution_json(r.j["outputs"], s);
    const auto cc = cross_check(sys, fd, s, a.tol, rad);
    r.j["residuals"] = {{"charpoly", s.residual},
                        {"cross_check", cc.deviation},
                        {"transport_error_estimate", mono.error_estimate}};
    if (f.p == 1 && f.q == 3)
      r.j["warnings"].push_back(
          "reference T coefficient of this characteristic polynomial lacks the d1*d2*x12 term; the exact expansion is used");
    if (s.reducible) r.j["warnings"].push_back(s.note);
    return;
  }
  throw UsageError("solve supports --family ramified|pdq");
}

struct QdeArgs {
  std::string name;
  bool list = false, check = false, solve = false, allow_mixed = false;
  QdeParams params;
  std::string weights;
  double tol = 1e-12;
};

void run_qde(Report& r, QdeArgs& a) {
  if (a.list) {
    json entries = json::array();
    for (const auto& e : qde_catalog())
      entries.push_back({{"name", e.name}, {"description", e.description}, {"parameters", e.parameters}, {"operator", e.source}});
    r.j["outputs"] = {{"catalog", entries}};
    return;
  }
  if (a.name.empty()) throw UsageError("--name is required (or --list)");
  if (!a.weights.empty()) {
    a.params.weights.clear();
    for (const auto& w : parse_scalar_list(a.weights)) {
      if (!w.is_real() || !is_integer(w.real())) throw UsageError("--weights must be integers");
      a.params.weights.push_back(static_cast<int>(w.real().get_num().get_si()));
    }
  }
  const auto& entry = qde_lookup(a.name);
  json in{{"name", entry.name}};
  for (const auto& p : entry.parameters) {
    if (p == "n") in["n"] = a.params.n;
    if (p == "m") in["m"] = a.params.m;
    if (p == "weights") in["weights"] = a.params.weights;
    if (p == "a") in["a"] = a.params.a;
    if (p == "b") in["b"] = a.params.b;
    if (p == "c") in["c"] = a.params.c;
  }
  r.j["inputs"] = in;
  const auto c = classify(entry, a.params);
  json slopes = json::array();
  for (const auto& s : c.polygon.slopes) slopes.push_back({{"slope", to_string(s.slope)}, {"mult", s.multiplicity}});
  r.j["outputs"] = {{"operator", c.operator_text},
                    {"slopes", slopes},
                    {"katz", to_string(c.katz)},
                    {"applicability", to_string(c.applicability)}};
  for (const auto& w : c.warnings) r.j["warnings"].push_back(w);
  if (a.check) {
    if (entry.name != "P^{n-1}") throw UsageError("--check is available for P^{n-1} only");
    const auto d = dubrovin_check(a.params.n);
    json vals = json::object();
    for (const auto& [k, v] : d.solution.values) vals[k] = to_json(v);
    r.j["outputs"]["dubrovin"] = {{"entries", vals},
                                  {"entries_are_binomials", d.entries_are_binomials},
                                  {"connection", matrix_json(d.connection)},
                                  {"gram", matrix_json(Mat<long long>(d.gram))},
                                  {"gram_upper_abs", d.gram_upper_abs},
                                  {"connection_offdiag_abs", d.connection_offdiag_abs},
                                  {"abs_multisets_equal", d.abs_multisets_equal},
                                  {"verdict", to_string(d.verdict)}};
  }
  if (a.solve) {
    const auto s = solve_qde(entry, a.params, a.tol, a.allow_mixed);
    json out = json::object();
    solution_json(out, s.solution);
    r.j["outputs"]["solve"] = out;
    r.j["residuals"] = {{"charpoly", s.solution.residual}, {"transport_error_estimate", s.monodromy_error}};
  }
}

struct Piii {
  std::string e, alpha, c1, c2, link, lambda, l13, l23;
  bool numeric = false;
};

GaussianRational need(const std::string& v, const std::string& flag) {
  if (v.empty()) throw UsageError(flag + " is required");
  return parse_scalar(v);
}

template <class K>
K as(const GaussianRational& g) {
  if constexpr (std::is_same_v<K, GaussianRational>) {
    return g;
  } else {
    return g.to_complex();
  }
}

template <class K>
PIIID7Data<K> data_of(const Piii& p) {
  PIIID7Data<K> d;
  d.e = as<K>(need(p.e, "--e"));
  d.alpha = as<K>(need(p.alpha, "--alpha"));
  d.c1 = as<K>(need(p.c1, "--c1"));
  d.c2 = as<K>(need(p.c2, "--c2"));
  const auto l = parse_matrix(p.link.empty() ? throw UsageError("--link is required") : p.link, 2);
  d.link = l.unaryExpr([](const GaussianRational& g) { return as<K>(g); });
  return d;
}

template <class K>
json data_json(const PIIID7Data<K>& d) {
  return {{"e", to_json(d.e)}, {"alpha", to_json(d.alpha)}, {"c1", to_json(d.c1)}, {"c2", to_json(d.c2)}, {"link", matrix_json(d.link)}};
}

template <class K>
void run_piii_typed(Report& r, const std::string& action, const Piii& p) {
  if (action == "solve") {
    std::optional<K> e;
    if (!p.e.empty()) e = as<K>(parse_scalar(p.e));
    const auto s = solve_link(as<K>(need(p.alpha, "--alpha")), as<K>(need(p.c1, "--c1")), as<K>(need(p.c2, "--c2")), e);
    r.j["outputs"] = data_json(s.data);
    r.j["outputs"]["solution_dimension"] = s.solution_dimension;
    r.j["outputs"]["det_normalized"] = s.det_normalized;
    r.j["outputs"]["det"] = to_json(s.det);
    r.j["outputs"]["top0"] = matrix_json(top0(s.data.e));
    r.j["outputs"]["topinf"] = matrix_json(topinf(s.data.alpha, s.data.c1, s.data.c2));
    r.j["residuals"]["relation"] = residual_json(relation_residual(s.data));
    if (!s.det_normalized) r.j["warnings"].push_back("det L has no square root in the exact field; L is not scaled to det 1");
  } else if (action == "residual") {
    const auto d = data_of<K>(p);
    r.j["residuals"]["relation"] = residual_json(relation_residual(d));
  } else if (action == "torus") {
    const auto d = data_of<K>(p);
    const auto l = parse_scalar_list(p.lambda.empty() ? throw UsageError("--lambda is required") : p.lambda);
    if (l.size() != 3) throw UsageError("--lambda needs l0,l1,l2");
    const auto moved = torus_act(d, TorusElement<K>{as<K>(l[0]), as<K>(l[1]), as<K>(l[2])});
    r.j["outputs"] = data_json(moved);
    r.j["residuals"] = {{"relation_before", residual_json(relation_residual(d))}, {"relation_after", residual_json(relation_residual(moved))}};
  } else if (action == "cubic") {
    const K v = cubic_residual(as<K>(need(p.l13, "--l13")), as<K>(need(p.l23, "--l23")), as<K>(need(p.alpha, "--alpha")),
                               as<K>(need(p.e, "--e")));
    r.j["outputs"]["value"] = to_json(v);
  }
}

void run_piii(Report& r, const std::string& action, const Piii& p) {
  json in{{"action", action}, {"mode", p.numeric ? "complex" : "exact"}};
  for (const auto& [k, v] : {std::pair{"e", p.e}, {"alpha", p.alpha}, {"c1", p.c1}, {"c2", p.c2}, {"link", p.link},
                             {"lambda", p.lambda}, {"l13", p.l13}, {"l23", p.l23}})
    if (!v.empty()) in[k] = v;
  r.j["inputs"] = in;
  if (p.numeric) {
    run_piii_typed<C>(r, action, p);
  } else {
    run_piii_typed<GaussianRational>(r, action, p);
  }
}

int emit(const Report& r, const Common& common) {
  const std::string text = r.j.dump(2) + "\n";
  if (common.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(common.out);
    if (!f) {
      std::cerr << "error: cannot write --out " << common.out << "\n";
      return 2;
    }
    f << text;
  }
  return 0;
}

int fail(Report& r, const Common& common, const char* kind, const std::string& message, int code) {
  r.j["error"] = {{"kind", kind}, {"message", message}};
  std::cerr << "error: " << message << "\n";
  emit(r, common);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Formal invariants, monodromy and Stokes data of irregular linear ODEs"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--out", common.out, "write the JSON report to this file");
  app.add_flag("--timing", common.timing, "include wall-clock timing");

  auto* newton = app.add_subcommand("newton", "Newton polygon at infinity");
  std::string op;
  std::vector<std::string> binds;
  newton->add_option("--op", op, "operator expression")->required();
  newton->add_option("--bind", binds, "name=value (repeatable)");

  FamilyArgs fam;
  auto* formal = app.add_subcommand("formal", "formal data (V, {V_q}, gamma)");
  add_family(formal, fam, {"pdq", "ramified", "unramified"});

  auto* directions = app.add_subcommand("directions", "singular directions and Stokes shapes");
  add_family(directions, fam, {"pdq", "ramified", "unramified"});
  std::string window = "0,1";
  directions->add_option("--window", window, "half-open window a,b in turns");

  auto* monodromy = app.add_subcommand("monodromy", "numerical loop monodromy around z = 0");
  add_family(monodromy, fam, {"pdq", "ramified", "unramified", "op"});
  std::optional<double> radius;
  double tol = 1e-12;
  bool clockwise = false;
  monodromy->add_option("--radius", radius, "loop radius (default: automatic)");
  monodromy->add_option("--tol", tol, "integrator tolerance");
  monodromy->add_flag("--clockwise", clockwise, "reverse orientation");

  auto* solve = app.add_subcommand("solve", "Stokes matrices from the monodromy identity");
  add_family(solve, fam, {"ramified", "pdq"});
  SolveArgs sargs;
  solve->add_option("--normalize", sargs.normalize, "pDq: unknowns pinned to 1");
  solve->add_option("--tol", sargs.tol, "integrator tolerance for numeric targets");
  solve->add_option("--radius", sargs.radius, "loop radius for numeric targets");
  solve->add_flag("--cross-check", sargs.cross, "ramified: compare with the numerical monodromy");

  auto* qde = app.add_subcommand("qde", "quantum differential equation catalog");
  QdeArgs qargs;
  qde->add_option("--name", qargs.name, "catalog entry");
  qde->add_flag("--list", qargs.list, "list the catalog");
  qde->add_flag("--check", qargs.check, "binomial and Gram comparison (P^{n-1})");
  qde->add_flag("--solve", qargs.solve, "Stokes data with the numerical monodromy target");
  qde->add_flag("--allow-mixed", qargs.allow_mixed, "permit the V0 + W solver");
  qde->add_option("-n", qargs.params.n, "n");
  qde->add_option("-m", qargs.params.m, "m");
  qde->add_option("--weights", qargs.weights, "comma-separated weights");
  qde->add_option("--a", qargs.params.a, "del Pezzo a");
  qde->add_option("--b", qargs.params.b, "del Pezzo b");
  qde->add_option("--c", qargs.params.c, "del Pezzo c");
  qde->add_option("--tol", qargs.tol, "integrator tolerance");

  auto* piii = app.add_subcommand("piii-d7", "PIII(D7) monodromy data");
  piii->require_subcommand(1);
  Piii pargs;
  std::string action;
  for (const auto& [name, help] : {std::pair{"solve", "e and link L from (alpha, c1, c2)"},
                                   {"residual", "relation residual of a data tuple"},
                                   {"torus", "torus action on a data tuple"},
                                   {"cubic", "evaluate the cubic surface equation"}}) {
    auto* sub = piii->add_subcommand(name, help);
    sub->add_option("--e", pargs.e, "Stokes entry at 0");
    sub->add_option("--alpha", pargs.alpha, "formal monodromy at infinity");
    sub->add_option("--c1", pargs.c1, "Stokes entry at infinity");
    sub->add_option("--c2", pargs.c2, "Stokes entry at infinity");
    sub->add_option("--link", pargs.link, "2x2 link 'a,b;c,d'");
    sub->add_option("--lambda", pargs.lambda, "torus element l0,l1,l2");
    sub->add_option("--l13", pargs.l13, "cubic coordinate");
    sub->add_option("--l23", pargs.l23, "cubic coordinate");
    sub->add_flag("--numeric", pargs.numeric, "complex floating mode");
    sub->callback([&action, name = std::string(name)] { action = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  const auto* sub = app.get_subcommands().front();
  std::vector<std::string> args(argv + 1, argv + argc);
  Report report(sub->get_name(), args);
  const auto start = std::chrono::steady_clock::now();
  try {
    if (sub == newton) run_newton(report, op, binds);
    else if (sub == formal) run_formal(report, fam);
    else if (sub == directions) run_directions(report, fam, window);
    else if (sub == monodromy) run_monodromy(report, fam, radius, tol, clockwise);
    else if (sub == solve) run_solve(report, fam, sargs);
    else if (sub == qde) run_qde(report, qargs);
    else if (sub == piii) run_piii(report, action, pargs);
  } catch (const UsageError& e) {
    return fail(report, common, "usage", e.what(), 2);
  } catch (const DomainError& e) {
    return fail(report, common, "domain", e.what(), 2);
  } catch (const NumericalError& e) {
    return fail(report, common, "numerical", e.what(), 3);
  }
  if (common.timing)
    report.j["timing"] = {{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
  return emit(report, common);
}
