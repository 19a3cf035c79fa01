#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "stokeskit/errors.hpp"
#include "stokeskit/formal.hpp"
#include "stokeskit/linalg.hpp"
#include "stokeskit/montrace.hpp"
#include "stokeskit/mpoly.hpp"

namespace stokeskit {

template <class K>
using SymbolicMatrix = Mat<MPoly<K>>;

/// Templates of all singular directions in [0, 1), ascending.
template <class K>
std::vector<StokesTemplate<K>> unit_templates(const FormalData<K>& f) {
  std::vector<StokesTemplate<K>> out;
  for (const auto& sd : singular_directions(f, Rational(0), Rational(1))) out.push_back(stokes_template(f, sd.d));
  return out;
}

/// γ·St_{d_s}···St_{d_1}, d_1 < … < d_s in [0, 1); St_{d_1} is the rightmost factor.
template <class K>
SymbolicMatrix<K> identity_product(const FormalData<K>& f, std::vector<StokesTemplate<K>> templates) {
  for (const auto& t : templates) {
    if (t.dimension != f.dimension()) throw DomainError("template dimension does not match the formal data");
    if (t.d.value < -1e-15 || t.d.value >= 1 - 1e-15 || (t.d.exact && (*t.d.exact < 0 || *t.d.exact >= 1)))
      throw DomainError("template direction " + t.d.to_string() + " outside [0,1)");
  }
  std::sort(templates.begin(), templates.end(), [](const auto& a, const auto& b) { return a.d.value < b.d.value; });
  for (std::size_t k = 1; k < templates.size(); ++k)
    if (templates[k].d.same_as(templates[k - 1].d)) throw DomainError("duplicate direction " + templates[k].d.to_string());
  const Eigen::Index n = f.dimension();
  SymbolicMatrix<K> m(n, n);
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = MPoly<K>(f.gamma(r, c));
  for (auto it = templates.rbegin(); it != templates.rend(); ++it) m = (m * it->symbolic()).eval();
  return m;
}

/// Monic det(λI − M), leading coefficient first.
template <class K>
std::vector<MPoly<K>> symbolic_char_poly(const SymbolicMatrix<K>& m) {
  return charpoly(m);
}

/// ∏(λ − r_j), leading first.
template <class K>
std::vector<K> poly_from_roots(const std::vector<K>& roots) {
  std::vector<K> p{K(1)};
  for (const auto& r : roots) {
    std::vector<K> next(p.size() + 1, K(0));
    for (std::size_t k = 0; k < p.size(); ++k) {
      next[k] = next[k] + p[k];
      next[k + 1] = next[k + 1] - r * p[k];
    }
    p = std::move(next);
  }
  return p;
}

template <class K>
struct StokesFactor {
  StokesTemplate<K> shape;
  Mat<K> matrix;
};

template <class K>
struct StokesSolution {
  std::vector<StokesFactor<K>> factors;  // ascending directions in [0, 1)
  std::map<std::string, K> values;
  /// Unknowns pinned to 1.
  std::vector<std::string> normalized;
  /// Composite unknowns (monomials in the original ones) and their solved values.
  std::vector<std::pair<Monomial, K>> composites;
  std::vector<K> target;
  /// max |charpoly coefficient − target coefficient| after substitution.
  double residual = 0;
  bool reducible = false;
  std::string note;

  /// γ·St_{d_s}···St_{d_1} with the solved factors.
  Mat<K> product(const FormalData<K>& f) const {
    Mat<K> m = f.gamma;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) m = (m * it->matrix).eval();
    return m;
  }
};

template <class K>
double charpoly_deviation(const std::vector<K>& a, const std::vector<K>& b) {
  if (a.size() != b.size()) throw DomainError("characteristic polynomials of different degree");
  double d = 0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, ScalarTraits<K>::magnitude(a[k] - b[k]));
  return d;
}

namespace detail {

inline int monomial_degree(const Monomial& m) {
  int d = 0;
  for (const auto& [v, e] : m) d += e;
  return d;
}

/// Coefficient matching with every non-constant monomial as one linear unknown.
template <class K>
StokesSolution<K> solve_by_charpoly(const FormalData<K>& f, const std::vector<K>& target,
                                    const std::vector<std::string>& normalize) {
  const int n = f.dimension();
  if (static_cast<int>(target.size()) != n + 1) throw DomainError("target characteristic polynomial must have degree " + std::to_string(n));
  if (!approx_equal(target[0], K(1))) throw DomainError("target characteristic polynomial must be monic");
  const auto templates = unit_templates(f);
  std::set<std::string> all;
  for (const auto& t : templates)
    for (const auto& name : t.unknowns()) all.insert(name);
  std::map<std::string, K> pinned;
  for (const auto& name : normalize) {
    if (!all.count(name)) throw DomainError("normalized name " + name + " is not a Stokes unknown");
    pinned[name] = K(1);
  }

  auto poly = symbolic_char_poly(identity_product(f, templates));
  if constexpr (!ScalarTraits<K>::is_exact) {
    // cancellation leftovers would become spurious composite unknowns
    for (auto& p : poly) {
      double scale = 0;
      for (const auto& [m, c] : p.terms()) scale = std::max(scale, ScalarTraits<K>::magnitude(c));
      MPoly<K> kept;
      for (const auto& [m, c] : p.terms())
        if (ScalarTraits<K>::magnitude(c) > 1e-12 * std::max(1.0, scale)) kept.add(m, c);
      p = kept;
    }
  }
  std::vector<Monomial> cols;
  for (std::size_t k = 1; k < poly.size(); ++k)
    for (const auto& [m, c] : poly[k].terms())
      if (!m.empty() && std::find(cols.begin(), cols.end(), m) == cols.end()) cols.push_back(m);

  StokesSolution<K> sol;
  sol.target = target;
  sol.normalized = normalize;
  Vec<K> x;
  if (!cols.empty()) {
    Mat<K> a = Mat<K>::Constant(n, static_cast<Eigen::Index>(cols.size()), K(0));
    Vec<K> b(n);
    for (int k = 1; k <= n; ++k) {
      for (std::size_t j = 0; j < cols.size(); ++j) a(k - 1, j) = poly[k].coefficient(cols[j]);
      b(k - 1) = target[k] - poly[k].constant_term();
    }
    x = solve_linear(a, b).x;
  }
  for (std::size_t j = 0; j < cols.size(); ++j) sol.composites.emplace_back(cols[j], x(j));

  // split composites through the pinned unknowns
  sol.values = pinned;
  const double scale = std::max(1.0, max_magnitude(f.gamma));
  for (const auto& [m, v] : sol.composites) {
    std::string free_var;
    for (const auto& [var, e] : m) {
      if (pinned.count(var)) continue;
      if (e != 1 || !free_var.empty())
        throw DomainError("composite unknown " + to_string(m) + " cannot be split with this normalization");
      free_var = var;
    }
    if (monomial_degree(m) >= 2 && negligible(v, scale)) sol.reducible = true;
    if (free_var.empty()) continue;  // consistency is covered by the residual
    auto [it, inserted] = sol.values.try_emplace(free_var, v);
    if (!inserted && !approx_equal(it->second, v))
      throw DomainError("unknown " + free_var + " receives two different values");
  }
  for (const auto& name : all) {
    if (!sol.values.count(name)) {
      // Never enters the characteristic polynomial.
      if (!sol.reducible) throw SingularSystemError("Stokes unknown " + name + " is not determined by the identity");
      sol.values[name] = K(0);
    }
  }
  if (sol.reducible)
    sol.note = "a product of Stokes entries vanishes: the equation is reducible and the solution is one point of a family";

  for (const auto& t : templates) sol.factors.push_back({t, t.instantiate(sol.values)});
  sol.residual = charpoly_deviation(charpoly(sol.product(f)), target);
  if constexpr (ScalarTraits<K>::is_exact) {
    if (sol.residual > 0) throw SingularSystemError("coefficient matching is inconsistent with the formal monodromy");
  }
  return sol;
}

}  // namespace detail

/// Totally ramified formal data of dimension roots.size() against the target
/// ∏(λ − r_j); the chain closure is fixed by det γ = ∏r_j.
template <class K>
StokesSolution<K> solve_ramified_roots(const std::vector<K>& roots) {
  const int n = static_cast<int>(roots.size());
  if (n < 2) throw DomainError("ramified solve needs n >= 2");
  K det(1);
  for (const auto& r : roots) det = det * r;
  const K closure = n % 2 == 1 ? det : K(-det);
  const auto f = formal_ramified<K>(n, closure);
  auto sol = detail::solve_by_charpoly(f, poly_from_roots(roots), {});
  for (const auto& [m, v] : sol.composites)
    if (detail::monomial_degree(m) != 1) throw DomainError("ramified identity is not linear in the Stokes unknowns");
  return sol;
}

/// Universal totally ramified family: target ∏(λ − e^{2πia_j}), closure (−1)^{n−1}.
/// K = Cyclotomic for rational a (exact), std::complex<double> otherwise.
template <class K, class A>
StokesSolution<K> solve_ramified(int n, const std::vector<A>& a) {
  if (n < 2) throw DomainError("ramified solve needs n >= 2");
  if (static_cast<int>(a.size()) != n) throw DomainError("ramified solve needs exactly n values of a");
  A sum(0);
  for (const auto& v : a) sum = sum + v;
  if constexpr (ScalarTraits<A>::is_exact) {
    if (!ScalarTraits<A>::is_zero(sum)) throw DomainError("sum of a must be 0");
  } else {
    if (std::abs(sum) > 1e-12) throw DomainError("sum of a must be 0");
  }
  std::vector<K> roots;
  for (const auto& v : a) roots.push_back(ScalarTraits<K>::exp_2pi_i(v));
  return solve_ramified_roots(roots);
}

/// V₀ ⊕ W shape: one regular block with diagonal γ of distinct eigenvalues, the rest
/// one-dimensional blocks with a common ramified slope.
template <class K>
void check_mixed_shape(const FormalData<K>& f) {
  int regular = -1;
  for (std::size_t i = 0; i < f.blocks.size(); ++i) {
    if (f.blocks[i].q.is_zero()) {
      if (regular >= 0) throw DomainError("wrong formal shape: more than one regular block");
      regular = static_cast<int>(i);
    }
  }
  if (regular < 0) throw DomainError("wrong formal shape: no regular block V0");
  const int w = static_cast<int>(f.blocks.size()) - 1;
  if (w < 1) throw DomainError("wrong formal shape: no ramified part");
  for (std::size_t i = 0; i < f.blocks.size(); ++i) {
    if (static_cast<int>(i) == regular) continue;
    if (f.blocks[i].dim != 1 || f.blocks[i].q.degree() != make_rational(1, w))
      throw DomainError("wrong formal shape: W must be totally ramified of slope 1/dim W");
  }
  const int off = f.offsets()[regular], m = f.blocks[regular].dim;
  const double scale = max_magnitude(f.gamma);
  for (int r = 0; r < f.dimension(); ++r) {
    for (int c = off; c < off + m; ++c) {
      if (r != c && !negligible(f.gamma(r, c), scale)) throw DomainError("wrong formal shape: gamma on V0 must be diagonal");
      if (r >= off && r < c && approx_equal(f.gamma(r, r), f.gamma(c, c)))
        throw DomainError("wrong formal shape: gamma eigenvalues on V0 must be distinct");
    }
  }
}

/// Composite unknowns: z (within W) and products x·y (V₀ ↔ W); `normalize` pins one
/// unknown per V₀ basis vector to 1.
template <class K>
StokesSolution<K> solve_mixed(const FormalData<K>& f, const std::vector<K>& target,
                              const std::vector<std::string>& normalize) {
  check_mixed_shape(f);
  int m = 0;
  for (const auto& b : f.blocks)
    if (b.q.is_zero()) m = b.dim;
  if (static_cast<int>(normalize.size()) != m)
    throw DomainError("normalization must pin exactly " + std::to_string(m) + " unknowns");
  return detail::solve_by_charpoly(f, target, normalize);
}

/// Monic charpoly of a numeric matrix, in K.
template <class K>
std::vector<K> numeric_target(const MatC& monodromy) {
  std::vector<K> out;
  for (const auto& c : spectrum(monodromy).charpoly) {
    if constexpr (ScalarTraits<K>::is_exact) {
      throw DomainError("numeric targets need a numeric scalar type");
    } else {
      out.push_back(K(c));
    }
  }
  return out;
}

struct CrossCheck {
  std::vector<std::complex<double>> monodromy_charpoly;
  std::vector<std::complex<double>> product_charpoly;
  double deviation = 0;
  /// Transport error estimate of the monodromy run.
  double monodromy_error = 0;
};

/// Compares charpoly(γ·∏St) with charpoly of the numerical loop monodromy;
/// radius 0 means conditioned_radius(sys).
template <class K>
CrossCheck cross_check(const MatrixSystem& sys, const FormalData<K>& f, const StokesSolution<K>& sol, double tol,
                       double radius = 0) {
  if (sys.dimension() != f.dimension()) throw DomainError("system and formal data have different dimensions");
  const auto mono = loop_monodromy(sys, radius > 0 ? radius : conditioned_radius(sys), tol);
  CrossCheck r;
  r.monodromy_error = mono.error_estimate;
  r.monodromy_charpoly = spectrum(mono.matrix).charpoly;
  const Mat<K> p = sol.product(f);
  MatC pc(p.rows(), p.cols());
  for (Eigen::Index i = 0; i < p.rows(); ++i)
    for (Eigen::Index j = 0; j < p.cols(); ++j) pc(i, j) = ScalarTraits<K>::to_complex(p(i, j));
  r.product_charpoly = spectrum(pc).charpoly;
  r.deviation = charpoly_deviation(r.monodromy_charpoly, r.product_charpoly);
  return r;
}

}  // namespace stokeskit
