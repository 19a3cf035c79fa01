#pragma once

#include <complex>
#include <optional>
#include <string>

#include "stokeskit/eigen_support.hpp"
#include "stokeskit/errors.hpp"
#include "stokeskit/gaussian.hpp"
#include "stokeskit/linalg.hpp"
#include "stokeskit/scalar_traits.hpp"

namespace stokeskit {

/// Monodromy data of PIII(D7): Stokes entry e at 0, formal monodromy α and Stokes
/// entries c₁, c₂ at ∞, link L: V(0) → V(∞).
template <class K>
struct PIIID7Data {
  K e{0};
  K alpha{1};
  K c1{0};
  K c2{0};
  Mat<K> link = Mat<K>::Identity(2, 2);
};

/// Base change e_j ↦ λ₀e_j at 0 and f_j ↦ λ_j f_j at ∞.
template <class K>
struct TorusElement {
  K l0{1};
  K l1{1};
  K l2{1};
};

namespace detail {

inline std::optional<GaussianRational> scalar_sqrt(const GaussianRational& x) { return exact_sqrt(x); }
template <class T>
std::optional<std::complex<T>> scalar_sqrt(const std::complex<T>& x) {
  return std::sqrt(x);
}

template <class K>
void require_nonzero(const K& x, const char* what) {
  if (ScalarTraits<K>::is_zero(x)) throw DomainError(std::string(what) + " must be nonzero");
}

}  // namespace detail

/// [[0,−1],[1,0]]·[[1,0],[e,1]].
template <class K>
Mat<K> top0(const K& e) {
  Mat<K> m(2, 2);
  m << -e, K(-1), K(1), K(0);
  return m;
}

template <class K>
Mat<K> topinf(const K& alpha, const K& c1, const K& c2) {
  detail::require_nonzero(alpha, "alpha");
  const K ai = K(1) / alpha;
  Mat<K> m(2, 2);
  m << alpha, alpha * c2, ai * c1, ai * (K(1) + c1 * c2);
  return m;
}

/// max |top₀·L⁻¹·top_∞·L − I|.
template <class K>
double relation_residual(const PIIID7Data<K>& d) {
  if (negligible(determinant(d.link), max_magnitude(d.link))) throw DomainError("link is singular");
  const Mat<K> r = top0(d.e) * inverse(d.link) * topinf(d.alpha, d.c1, d.c2) * d.link - Mat<K>::Identity(2, 2);
  return max_magnitude(r);
}

template <class K>
struct LinkSolution {
  PIIID7Data<K> data;
  /// Dimension of {L : L·top₀ = top_∞⁻¹·L}.
  int solution_dimension = 0;
  /// det L = 1 was reached (exact mode needs a square determinant in the field).
  bool det_normalized = false;
  K det{1};
};

/// e is forced by tr top_∞ = tr top₀⁻¹ = −e; L spans the intertwiners, scaled to det 1.
template <class K>
LinkSolution<K> solve_link(const K& alpha, const K& c1, const K& c2, const std::optional<K>& requested_e = {}) {
  const Mat<K> ti = topinf(alpha, c1, c2);
  const K e = -(ti(0, 0) + ti(1, 1));
  if (requested_e && !approx_equal(*requested_e, e))
    throw DomainError("no link: the trace of top_inf forces e = " + to_string(e));
  const double scale = std::max(1.0, max_magnitude(ti));
  if (negligible(ti(0, 1), scale) && negligible(ti(1, 0), scale) && negligible(K(ti(0, 0) - ti(1, 1)), scale))
    throw DomainError("no link: top_inf is scalar and top0 is not");

  const Mat<K> t0 = top0(e);
  const Mat<K> tinv = inverse(ti);
  // unknown index 2p+q for L(p,q); row 2i+j for (L·top₀ − top_∞⁻¹·L)(i,j)
  Mat<K> a = Mat<K>::Constant(4, 4, K(0));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) {
          K v(0);
          if (p == i) v = v + t0(q, j);
          if (q == j) v = v - tinv(i, p);
          a(2 * i + j, 2 * p + q) = v;
        }
  const Mat<K> ns = nullspace(a);
  LinkSolution<K> out;
  out.solution_dimension = static_cast<int>(ns.cols());
  if (ns.cols() == 0) throw DomainError("no link: top0 and top_inf are not conjugate");

  auto link_of = [&](int s, int t) {
    Mat<K> l(2, 2);
    for (int k = 0; k < 4; ++k) {
      K v = K(s) * ns(k, 0);
      if (ns.cols() > 1) v = v + K(t) * ns(k, 1);
      l(k / 2, k % 2) = v;
    }
    return l;
  };
  std::optional<Mat<K>> chosen;
  // prefer combinations whose determinant has a square root in K
  for (int r = 0; r <= 3 && !chosen; ++r)
    for (int s = -r; s <= r && !chosen; ++s)
      for (int t = -r; t <= r && !chosen; ++t) {
        if (std::max(std::abs(s), std::abs(t)) != r) continue;
        const Mat<K> l = link_of(s, t);
        const K det = determinant(l);
        if (negligible(det, max_magnitude(l))) continue;
        if (detail::scalar_sqrt(det)) chosen = l;
      }
  if (!chosen) {
    for (int s = 1; s <= 3 && !chosen; ++s)
      for (int t = 0; t <= 3 && !chosen; ++t) {
        const Mat<K> l = link_of(s, t);
        if (!negligible(determinant(l), max_magnitude(l))) chosen = l;
      }
  }
  if (!chosen) throw DomainError("no link: no invertible intertwiner");
  Mat<K> l = *chosen;
  if (const auto root = detail::scalar_sqrt(determinant(l))) {
    l = (l * (K(1) / *root)).eval();
    out.det_normalized = true;
  }
  out.det = determinant(l);
  out.data = {e, alpha, c1, c2, l};
  return out;
}

/// c₁ ↦ c₁λ₁/λ₂, c₂ ↦ c₂λ₂/λ₁, L ↦ diag(λ₁,λ₂)⁻¹·L·λ₀; e and α are fixed.
template <class K>
PIIID7Data<K> torus_act(const PIIID7Data<K>& d, const TorusElement<K>& t) {
  detail::require_nonzero(t.l0, "lambda0");
  detail::require_nonzero(t.l1, "lambda1");
  detail::require_nonzero(t.l2, "lambda2");
  PIIID7Data<K> out = d;
  out.c1 = d.c1 * t.l1 / t.l2;
  out.c2 = d.c2 * t.l2 / t.l1;
  Mat<K> dinv = Mat<K>::Constant(2, 2, K(0));
  dinv(0, 0) = K(1) / t.l1;
  dinv(1, 1) = K(1) / t.l2;
  out.link = (dinv * d.link * t.l0).eval();
  return out;
}

/// Rescales L to det 1 when the square root exists in K; returns the factor applied.
template <class K>
std::optional<K> normalize_link(PIIID7Data<K>& d) {
  const auto root = detail::scalar_sqrt(determinant(d.link));
  if (!root || ScalarTraits<K>::is_zero(*root)) return std::nullopt;
  const K factor = K(1) / *root;
  d.link = (d.link * factor).eval();
  return factor;
}

/// ℓ₁₃ℓ₂₃e + ℓ₁₃² + ℓ₂₃² + αℓ₁₃ + ℓ₂₃. The map from data orbits to (ℓ₁₃, ℓ₂₃) is not provided.
template <class K>
K cubic_residual(const K& l13, const K& l23, const K& alpha, const K& e) {
  return l13 * l23 * e + l13 * l13 + l23 * l23 + alpha * l13 + l23;
}

}  // namespace stokeskit
