#include "stokeskit/qde.hpp"

#include <algorithm>
#include <numbers>

#include "stokeskit/errors.hpp"
#include "stokeskit/families.hpp"
#include "stokeskit/montrace.hpp"
#include "stokeskit/parser.hpp"
#include "stokeskit/system.hpp"

namespace stokeskit {

const std::vector<QdeEntry>& qde_catalog() {
  static const std::vector<QdeEntry> entries{
      {"P^{n-1}", "projective space P^{n-1}", {"n"}, "delta^n - z"},
      {"hypersurface",
       "non-singular degree-m hypersurface in P^{n+m-1}",
       {"n", "m"},
       "delta^{n+m-1} - m^m z (delta+(m-1)/m)...(delta+1/m)"},
      {"weighted", "weighted projective space P(w_0..w_n)", {"weights"}, "prod_j delta(delta-1/w_j)...(delta-(w_j-1)/w_j) - z"},
      {"delPezzo", "del Pezzo surfaces", {"a", "b", "c"}, "delta^3 - a z delta^2 - ((b-a)z^2 + bz) delta + 2a z^2 - c z^3"},
      {"V5", "linear section of G(2,5) in the Pluecker embedding", {}, "delta^4 - 11z delta^2 - 11z delta - 3z - z^2"},
      {"V22", "Fano 3-fold V22", {}, "delta^4 - (94z^2+6z) delta^2 - (484z^3+188z^2+2z) delta - (695z^4+632z^3+98z^2)"},
  };
  return entries;
}

const QdeEntry& qde_lookup(std::string_view name) {
  for (const auto& e : qde_catalog())
    if (e.name == name) return e;
  throw DomainError("unknown catalog entry '" + std::string(name) + "'");
}

namespace {

std::string num(long v) { return v < 0 ? "(" + std::to_string(v) + ")" : std::to_string(v); }

std::string shifted(const std::string& sign, long p, long q) {
  return "(delta" + sign + std::to_string(p) + "/" + std::to_string(q) + ")";
}

}  // namespace

std::string qde_operator_text(const QdeEntry& entry, const QdeParams& p) {
  const std::string& name = entry.name;
  if (name == "P^{n-1}") {
    if (p.n < 1) throw DomainError("P^{n-1} needs n >= 1");
    return "delta^" + std::to_string(p.n) + " - z";
  }
  if (name == "hypersurface") {
    if (p.n < 1) throw DomainError("hypersurface needs n >= 1");
    if (p.m < 2) throw DomainError("hypersurface needs m > 1");
    if (p.m > 12) throw DomainError("hypersurface degree m > 12 is not supported");
    long mm = 1;
    for (int k = 0; k < p.m; ++k) mm *= p.m;
    std::string t = "delta^" + std::to_string(p.n + p.m - 1) + " - " + std::to_string(mm) + "*z";
    for (int k = p.m - 1; k >= 1; --k) t += "*" + shifted("+", k, p.m);
    return t;
  }
  if (name == "weighted") {
    if (p.weights.empty()) throw DomainError("weighted projective space needs at least one weight");
    std::string t;
    for (int w : p.weights) {
      if (w < 1) throw DomainError("weights must be positive integers");
      if (!t.empty()) t += "*";
      t += "delta";
      for (int k = 1; k < w; ++k) t += "*" + shifted("-", k, w);
    }
    return t + " - z";
  }
  if (name == "delPezzo") {
    return "delta^3 - " + num(p.a) + "*z*delta^2 - ((" + num(p.b) + "-" + num(p.a) + ")*z^2 + " + num(p.b) +
           "*z)*delta + 2*" + num(p.a) + "*z^2 - " + num(p.c) + "*z^3";
  }
  if (name == "V5") return "delta^4 - 11*z*delta^2 - 11*z*delta - 3*z - z^2";
  if (name == "V22")
    return "delta^4 - (94*z^2 + 6*z)*delta^2 - (484*z^3 + 188*z^2 + 2*z)*delta - (695*z^4 + 632*z^3 + 98*z^2)";
  throw DomainError("unknown catalog entry '" + name + "'");
}

DiffOperator qde_operator(const QdeEntry& entry, const QdeParams& params) {
  return parse_operator(qde_operator_text(entry, params));
}

std::string to_string(Applicability a) {
  switch (a) {
    case Applicability::PureRamified: return "pureRamified";
    case Applicability::MixedProp2: return "mixedProp2";
    case Applicability::CatalogOnly: return "catalogOnly";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Match: return "match";
    case Verdict::Mismatch: return "mismatch";
    case Verdict::NotDecided: return "not-decided";
  }
  return "?";
}

QdeClassification classify(const QdeEntry& entry, const QdeParams& params) {
  QdeClassification c;
  c.name = entry.name;
  c.operator_text = qde_operator_text(entry, params);
  c.polygon = newton_polygon(parse_operator(c.operator_text));
  c.katz = katz_invariant(c.polygon);
  const auto& s = c.polygon.slopes;
  const int d = c.polygon.degree();
  auto unit_slope = [](const Slope& x) { return x.slope == make_rational(1, x.multiplicity); };
  if (s.size() == 1 && unit_slope(s[0]) && s[0].multiplicity == d) {
    c.applicability = Applicability::PureRamified;
    c.w_dim = d;
  } else if (s.size() == 2 && s[0].slope == 0 && unit_slope(s[1])) {
    c.applicability = Applicability::MixedProp2;
    c.v0_dim = s[0].multiplicity;
    c.w_dim = s[1].multiplicity;
  }
  if (entry.name == "hypersurface" && params.m > params.n)
    c.warnings.push_back("outsideVerifiedRange: m > n");
  if (c.katz == 0) c.warnings.push_back("regular singular at infinity");
  return c;
}

Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> gram_projective(int n) {
  if (n < 1) throw DomainError("gram_projective needs n >= 1");
  if (n > 30) throw DomainError("gram_projective supports n <= 30");
  Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> g = Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) g(i, j) = binomial(n - 1 + j - i, n - 1).get_si();
  return g;
}

namespace {

std::optional<long long> as_integer(const Cyclotomic& x) {
  if (!x.is_rational()) return std::nullopt;
  const Rational r = x.rational_value();
  if (r.get_den() != 1) return std::nullopt;
  return r.get_num().get_si();
}

}  // namespace

DubrovinReport dubrovin_check(int n) {
  if (n < 2) throw DomainError("dubrovin_check needs n >= 2");
  DubrovinReport r;
  r.n = n;
  r.solution = solve_ramified<Cyclotomic>(n, std::vector<GaussianRational>(n, GaussianRational(0)));
  r.entries_are_binomials = true;
  for (const auto& [name, v] : r.solution.values) {
    const auto k = as_integer(v);
    bool ok = false;
    if (k)
      for (int j = 1; j < n; ++j) ok = ok || std::llabs(*k) == binomial(n, j).get_si();
    r.entries_are_binomials = r.entries_are_binomials && ok;
  }
  r.connection = Mat<Cyclotomic>::Identity(n, n);
  for (const auto& f : r.solution.factors)
    if (f.shape.d.value < 0.5 - 1e-15) r.connection = (f.matrix * r.connection).eval();
  r.gram = gram_projective(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) r.gram_upper_abs.push_back(std::llabs(r.gram(i, j)));
  bool integral = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || r.connection(i, j).is_zero()) continue;
      const auto k = as_integer(r.connection(i, j));
      if (!k) {
        integral = false;
        continue;
      }
      r.connection_offdiag_abs.push_back(std::llabs(*k));
    }
  std::sort(r.gram_upper_abs.begin(), r.gram_upper_abs.end());
  std::sort(r.connection_offdiag_abs.begin(), r.connection_offdiag_abs.end());
  r.abs_multisets_equal = integral && r.gram_upper_abs == r.connection_offdiag_abs;
  r.verdict = r.entries_are_binomials ? Verdict::NotDecided : Verdict::Mismatch;
  return r;
}

std::optional<FormalData<std::complex<double>>> qde_formal_data(const QdeEntry& entry, const QdeParams& params) {
  using K = std::complex<double>;
  const auto c = classify(entry, params);
  if (entry.name == "P^{n-1}" && c.applicability == Applicability::PureRamified && params.n >= 2)
    return formal_ramified<K>(params.n, ramified_family_closure<K>(params.n));
  if (entry.name == "weighted" && c.applicability == Applicability::PureRamified && c.w_dim >= 2) {
    // monodromy at 0 has eigenvalues e^{2πik/w}; det γ must match their product
    K det(1);
    for (int w : params.weights)
      for (int k = 0; k < w; ++k) det *= ScalarTraits<K>::exp_2pi_i(make_rational(k, w));
    return formal_ramified<K>(c.w_dim, c.w_dim % 2 == 1 ? det : -det);
  }
  if (entry.name == "hypersurface" && c.applicability == Applicability::MixedProp2) {
    std::vector<K> v0;
    for (int k = 1; k < params.m; ++k) v0.push_back(ScalarTraits<K>::exp_2pi_i(make_rational(-k, params.m)));
    return formal_mixed<K>(v0, params.n, K((params.n + params.m) % 2 == 0 ? 1 : -1), 1);
  }
  return std::nullopt;
}

QdeSolve solve_qde(const QdeEntry& entry, const QdeParams& params, double tol, bool allow_mixed) {
  auto c = classify(entry, params);
  auto f = qde_formal_data(entry, params);
  if (!f) throw DomainError("no Stokes solver for " + entry.name + " (" + to_string(c.applicability) + ")");
  if (c.applicability == Applicability::MixedProp2 && !allow_mixed)
    throw DomainError("mixed V0 + W solve must be enabled explicitly");
  const auto sys = to_system(qde_operator(entry, params));
  const auto mono = loop_monodromy(sys, conditioned_radius(sys), tol);
  QdeSolve out{std::move(c), *f, numeric_target<std::complex<double>>(mono.matrix), mono.error_estimate, {}};
  if (out.classification.applicability == Applicability::PureRamified) {
    out.solution = detail::solve_by_charpoly(out.formal, out.target, {});
  } else {
    check_mixed_shape(out.formal);
    const int m = out.classification.v0_dim;
    std::vector<std::string> norm;
    for (int col = 0; col < m; ++col) {
      for (const auto& t : unit_templates(out.formal)) {
        const auto it = std::find_if(t.entries.begin(), t.entries.end(), [&](const auto& e) { return e.col == col; });
        if (it != t.entries.end()) {
          norm.push_back(it->name);
          break;
        }
      }
    }
    out.solution = solve_mixed(out.formal, out.target, norm);
  }
  return out;
}

}  // namespace stokeskit
