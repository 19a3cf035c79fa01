#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "stokeskit/eigen_support.hpp"
#include "stokeskit/errors.hpp"
#include "stokeskit/families.hpp"
#include "stokeskit/linalg.hpp"
#include "stokeskit/mpoly.hpp"
#include "stokeskit/rational.hpp"
#include "stokeskit/scalar_traits.hpp"

namespace stokeskit {

/// q = Σ c_s z^s with s ∈ (1/m)Z_{>0}.
template <class K>
struct Eigenvalue {
  int ramification = 1;
  std::map<Rational, K> coeffs;

  static Eigenvalue zero() { return {}; }
  static Eigenvalue monomial(const K& c, const Rational& s) {
    Eigenvalue e;
    e.ramification = static_cast<int>(s.get_den().get_si());
    if (!ScalarTraits<K>::is_zero(c)) e.coeffs.emplace(s, c);
    return e;
  }

  bool is_zero() const { return coeffs.empty(); }
  /// deg_z q (0 for q = 0).
  Rational degree() const { return coeffs.empty() ? Rational(0) : coeffs.rbegin()->first; }
  const std::pair<const Rational, K>& leading() const { return *coeffs.rbegin(); }

  Eigenvalue operator-(const Eigenvalue& o) const {
    Eigenvalue r = *this;
    r.ramification = std::lcm(ramification, o.ramification);
    for (const auto& [s, c] : o.coeffs) {
      auto [it, inserted] = r.coeffs.try_emplace(s, -c);
      if (!inserted) {
        it->second = it->second - c;
        if (approx_equal(it->second, K(0))) r.coeffs.erase(it);
      }
    }
    return r;
  }

  /// Image under z^{1/m} ↦ e^{2πi/m} z^{1/m}: c_s ↦ e^{2πis} c_s.
  Eigenvalue galois() const {
    Eigenvalue r;
    r.ramification = ramification;
    for (const auto& [s, c] : coeffs) r.coeffs.emplace(s, c * ScalarTraits<K>::exp_2pi_i(s));
    return r;
  }

  bool same_as(const Eigenvalue& o) const { return (*this - o).is_zero(); }

  std::string to_string() const {
    if (coeffs.empty()) return "0";
    std::string out;
    for (const auto& [s, c] : coeffs) {
      if (!out.empty()) out += " + ";
      out += "(" + stokeskit::to_string(c) + ")*z^(" + stokeskit::to_string(s) + ")";
    }
    return out;
  }
};

/// How Stokes unknowns are named from coordinate labels: x{row}{col} or x{col}{row}.
enum class UnknownNaming { RowCol, SourceTarget };

template <class K>
struct FormalBlock {
  Eigenvalue<K> q;
  int dim = 1;
  std::vector<std::string> labels;
};

/// The tuple (V, {V_q}, γ) with V = ⊕ V_q in block coordinates.
template <class K>
struct FormalData {
  std::vector<FormalBlock<K>> blocks;
  Mat<K> gamma;
  /// γ maps block i onto block block_permutation[i].
  std::vector<int> block_permutation;
  UnknownNaming naming = UnknownNaming::RowCol;

  int dimension() const {
    int n = 0;
    for (const auto& b : blocks) n += b.dim;
    return n;
  }
  std::vector<int> offsets() const {
    std::vector<int> out;
    int n = 0;
    for (const auto& b : blocks) {
      out.push_back(n);
      n += b.dim;
    }
    return out;
  }
  std::string label(int coord) const {
    int n = 0;
    for (const auto& b : blocks) {
      if (coord < n + b.dim) return b.labels[coord - n];
      n += b.dim;
    }
    throw DomainError("coordinate out of range");
  }
};

/// Checks the invariants and fills in block_permutation.
template <class K>
FormalData<K> make_formal_data(std::vector<FormalBlock<K>> blocks, Mat<K> gamma, UnknownNaming naming) {
  FormalData<K> f;
  f.blocks = std::move(blocks);
  f.gamma = std::move(gamma);
  f.naming = naming;
  const int n = f.dimension();
  if (f.blocks.empty()) throw DomainError("formal data needs at least one block");
  if (f.gamma.rows() != n || f.gamma.cols() != n) throw DomainError("gamma must be square of size sum(dims)");
  for (const auto& b : f.blocks) {
    if (b.dim < 1) throw DomainError("block dimensions must be positive");
    if (static_cast<int>(b.labels.size()) != b.dim) throw DomainError("one label per coordinate is required");
  }
  for (std::size_t i = 0; i < f.blocks.size(); ++i)
    for (std::size_t j = i + 1; j < f.blocks.size(); ++j)
      if (f.blocks[i].q.same_as(f.blocks[j].q)) throw DomainError("eigenvalue blocks must be distinct");
  if (negligible(determinant(f.gamma), max_magnitude(f.gamma))) throw DomainError("gamma must be invertible");

  const auto off = f.offsets();
  f.block_permutation.assign(f.blocks.size(), -1);
  std::vector<bool> hit(f.blocks.size(), false);
  for (std::size_t i = 0; i < f.blocks.size(); ++i) {
    const auto image = f.blocks[i].q.galois();
    for (std::size_t j = 0; j < f.blocks.size(); ++j)
      if (f.blocks[j].q.same_as(image)) f.block_permutation[i] = static_cast<int>(j);
    const int j = f.block_permutation[i];
    if (j < 0 || hit[j]) throw DomainError("eigenvalues are not stable under formal monodromy");
    hit[j] = true;
    if (f.blocks[j].dim != f.blocks[i].dim) throw DomainError("gamma must map each block onto a block of equal size");
    // γ V_q ⊂ V_{γq}: the columns of block i vanish outside the rows of block j
    for (int c = off[i]; c < off[i] + f.blocks[i].dim; ++c)
      for (int r = 0; r < n; ++r) {
        const bool inside = r >= off[j] && r < off[j] + f.blocks[j].dim;
        if (!inside && !ScalarTraits<K>::is_zero(f.gamma(r, c)))
          throw DomainError("gamma does not map block " + std::to_string(i) + " into block " + std::to_string(j));
      }
  }
  return f;
}

enum class ClosureSign { Plus, Minus };

/// ₚD_q: V₀ (eigenvalue 0, γf_j = e^{−2πiμ_j}f_j) ⊕ σ = q−p lines with eigenvalues
/// −ζ^{j−1}z^{1/σ}, γe_j = e_{j+1}, γe_σ = e^{±2πiλ}e₁, λ = (σ+1)/2 + Σμ − Σν.
template <class K>
FormalData<K> formal_pDq(int p, int q, const std::vector<GaussianRational>& mu, const std::vector<GaussianRational>& nu,
                         ClosureSign sign = ClosureSign::Plus) {
  check_pDq_parameters(p, q, mu, nu);
  const int sigma = q - p;
  std::vector<FormalBlock<K>> blocks;
  FormalBlock<K> v0;
  v0.dim = p;
  for (int j = 1; j <= p; ++j) v0.labels.push_back(p == 1 ? std::string("0") : "f" + std::to_string(j));
  blocks.push_back(v0);
  const Rational s = make_rational(1, sigma);
  for (int j = 1; j <= sigma; ++j) {
    FormalBlock<K> b;
    b.q = Eigenvalue<K>::monomial(-ScalarTraits<K>::exp_2pi_i(Rational((j - 1) * s)), s);
    b.labels = {std::to_string(j)};
    blocks.push_back(b);
  }
  GaussianRational lambda(make_rational(sigma + 1, 2));
  for (const auto& m : mu) lambda += m;
  for (const auto& v : nu) lambda -= v;
  Mat<K> gamma = Mat<K>::Constant(q, q, K(0));
  for (int j = 0; j < p; ++j) gamma(j, j) = ScalarTraits<K>::exp_2pi_i(GaussianRational(0) - mu[j]);
  for (int j = 0; j + 1 < sigma; ++j) gamma(p + j + 1, p + j) = K(1);
  gamma(p, p + sigma - 1) = ScalarTraits<K>::exp_2pi_i(sign == ClosureSign::Plus ? lambda : GaussianRational(0) - lambda);
  return make_formal_data(std::move(blocks), std::move(gamma), UnknownNaming::SourceTarget);
}

/// Totally ramified: eigenvalues ζ^i z^{1/n}, γe_i = e_{i+1}, γe_{n−1} = closure·e₀.
template <class K>
FormalData<K> formal_ramified(int n, const K& closure) {
  if (n < 2) throw DomainError("totally ramified formal data needs n >= 2");
  if (ScalarTraits<K>::is_zero(closure)) throw DomainError("closure must be nonzero");
  std::vector<FormalBlock<K>> blocks;
  const Rational s = make_rational(1, n);
  for (int i = 0; i < n; ++i) {
    FormalBlock<K> b;
    b.q = Eigenvalue<K>::monomial(ScalarTraits<K>::exp_2pi_i(Rational(i * s)), s);
    b.labels = {std::to_string(i)};
    blocks.push_back(b);
  }
  Mat<K> gamma = Mat<K>::Constant(n, n, K(0));
  for (int i = 0; i + 1 < n; ++i) gamma(i + 1, i) = K(1);
  gamma(0, n - 1) = closure;
  return make_formal_data(std::move(blocks), std::move(gamma), UnknownNaming::RowCol);
}

/// Closure that makes det γ = 1 for the universal totally ramified family.
template <class K>
K ramified_family_closure(int n) {
  return K(n % 2 == 1 ? 1 : -1);
}

/// Unramified: eigenvalues λ_j z, γ = I.
template <class K>
FormalData<K> formal_unramified(const std::vector<K>& lambda) {
  if (lambda.empty()) throw DomainError("unramified formal data needs at least one lambda");
  for (std::size_t i = 0; i < lambda.size(); ++i)
    for (std::size_t j = i + 1; j < lambda.size(); ++j)
      if (approx_equal(lambda[i], lambda[j])) throw DomainError("lambda values must be distinct");
  std::vector<FormalBlock<K>> blocks;
  for (std::size_t j = 0; j < lambda.size(); ++j) {
    FormalBlock<K> b;
    b.q = Eigenvalue<K>::monomial(lambda[j], Rational(1));
    b.labels = {std::to_string(j + 1)};
    blocks.push_back(b);
  }
  const auto n = static_cast<Eigen::Index>(lambda.size());
  return make_formal_data<K>(std::move(blocks), Mat<K>::Identity(n, n), UnknownNaming::RowCol);
}

/// V₀ ⊕ W: V₀ regular (eigenvalue 0, γ = diag(v0_gamma)) and W totally ramified of
/// dimension n with eigenvalues sign·ζ^i z^{1/n} and chain closure.
template <class K>
FormalData<K> formal_mixed(const std::vector<K>& v0_gamma, int n, const K& closure, int sign = 1) {
  const int m = static_cast<int>(v0_gamma.size());
  if (m < 1 || n < 1) throw DomainError("mixed formal data needs m >= 1 and n >= 1");
  if (ScalarTraits<K>::is_zero(closure)) throw DomainError("closure must be nonzero");
  std::vector<FormalBlock<K>> blocks;
  FormalBlock<K> v0;
  v0.dim = m;
  for (int j = 1; j <= m; ++j) v0.labels.push_back(m == 1 ? std::string("0") : "f" + std::to_string(j));
  blocks.push_back(v0);
  const Rational s = make_rational(1, n);
  for (int i = 0; i < n; ++i) {
    FormalBlock<K> b;
    b.q = Eigenvalue<K>::monomial(K(sign) * ScalarTraits<K>::exp_2pi_i(Rational(i * s)), s);
    b.labels = {std::to_string(i + 1)};
    blocks.push_back(b);
  }
  Mat<K> gamma = Mat<K>::Constant(m + n, m + n, K(0));
  for (int j = 0; j < m; ++j) gamma(j, j) = v0_gamma[j];
  for (int i = 0; i + 1 < n; ++i) gamma(m + i + 1, m + i) = K(1);
  gamma(m, m + n - 1) = closure;
  return make_formal_data(std::move(blocks), std::move(gamma), UnknownNaming::SourceTarget);
}

/// Malgrange irregularity Σ_{q≠q̃} deg(q − q̃)·dim V_q·dim V_q̃ over ordered pairs.
template <class K>
Rational irregularity(const FormalData<K>& f) {
  Rational total(0);
  for (std::size_t i = 0; i < f.blocks.size(); ++i)
    for (std::size_t j = 0; j < f.blocks.size(); ++j)
      if (i != j) total += (f.blocks[i].q - f.blocks[j].q).degree() * f.blocks[i].dim * f.blocks[j].dim;
  return total;
}

template <class K>
Rational katz_invariant(const FormalData<K>& f) {
  Rational k(0);
  for (const auto& b : f.blocks) k = std::max(k, b.q.degree());
  return k;
}

/// Direction in turns, z = r·e^{2πid}. Exact when the data allow it.
struct Direction {
  std::optional<Rational> exact;
  double value = 0;

  static Direction of(const Rational& r) { return {r, r.get_d()}; }
  static Direction of(double v) { return {std::nullopt, v}; }

  bool same_as(const Direction& o) const {
    if (exact && o.exact) return *exact == *o.exact;
    return std::abs(value - o.value) <= 1e-12;
  }
  Direction shifted(int k) const {
    if (exact) return of(*exact + k);
    return of(value + k);
  }
  std::string to_string() const;
};

/// An unknown block Hom(V_from, V_to) is present at the direction.
struct ActivePair {
  int from = 0;
  int to = 0;
  friend bool operator==(const ActivePair&, const ActivePair&) = default;
};

struct SingularDirection {
  Direction d;
  std::vector<ActivePair> active_pairs;
};

namespace detail {

/// Singular directions of e^{∫(q_from − q_to)dz/z}: base + (1/s)Z, base ∈ [0, 1/s).
struct PairDirections {
  Direction base;
  Rational s;
};

template <class K>
std::optional<PairDirections> pair_directions(const FormalData<K>& f, int from, int to) {
  const auto diff = f.blocks[from].q - f.blocks[to].q;
  if (diff.is_zero()) return std::nullopt;
  const auto& [s, c] = diff.leading();
  // arg(c) + 2πsd ≡ π: maximal decay of e^{c z^s/s} as r → ∞
  const Rational period = Rational(1) / s;
  std::optional<Rational> turn;
  if constexpr (ScalarTraits<K>::is_exact) turn = ScalarTraits<K>::exact_turn(c);
  if (turn) {
    Rational d = (Rational(1, 2) - *turn) / s;
    d -= Rational(floor(d / period)) * period;
    return PairDirections{Direction::of(d), s};
  }
  const auto cc = ScalarTraits<K>::to_complex(c);
  const double theta = std::atan2(cc.imag(), cc.real()) / (2 * std::numbers::pi);
  const double p = period.get_d();
  double d = (0.5 - theta) / s.get_d();
  d -= std::floor(d / p) * p;
  if (d >= p - 1e-15) d = 0;
  return PairDirections{Direction::of(d), s};
}

inline bool on_lattice(const PairDirections& pd, const Direction& d) {
  if (pd.base.exact && d.exact) return is_integer((*d.exact - *pd.base.exact) * pd.s);
  const double k = (d.value - pd.base.value) * pd.s.get_d();
  return std::abs(k - std::round(k)) <= 1e-12 * std::max(1.0, pd.s.get_d());
}

}  // namespace detail

/// Singular directions in [lo, hi), merged across pairs and sorted.
template <class K>
std::vector<SingularDirection> singular_directions(const FormalData<K>& f, const Rational& lo, const Rational& hi) {
  if (!(lo < hi)) throw DomainError("direction window must satisfy lo < hi");
  std::vector<SingularDirection> out;
  auto add = [&](const Direction& d, ActivePair pair) {
    for (auto& sd : out) {
      if (sd.d.same_as(d)) {
        sd.active_pairs.push_back(pair);
        return;
      }
    }
    out.push_back({d, {pair}});
  };
  const int nb = static_cast<int>(f.blocks.size());
  for (int a = 0; a < nb; ++a) {
    for (int b = 0; b < nb; ++b) {
      if (a == b) continue;
      const auto pd = detail::pair_directions(f, a, b);
      if (!pd) continue;
      const Rational period = Rational(1) / pd->s;
      if (pd->base.exact) {
        Rational d = *pd->base.exact + Rational(-floor((*pd->base.exact - lo) / period)) * period;
        while (d < lo) d += period;
        for (; d < hi; d += period) add(Direction::of(d), {a, b});
      } else {
        const double p = period.get_d();
        double d = pd->base.value - std::floor((pd->base.value - lo.get_d()) / p) * p;
        while (d < lo.get_d() - 1e-15) d += p;
        for (; d < hi.get_d() - 1e-15; d += p) add(Direction::of(d), {a, b});
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.d.value < y.d.value; });
  return out;
}

template <class K>
struct StokesEntry {
  int row = 0;
  int col = 0;
  std::string name;
  /// Entry value is coefficient·name (1 for templates, γ-shift factors after transport).
  K coefficient{1};
};

/// id + Σ unknown entries at the active positions.
template <class K>
struct StokesTemplate {
  Direction d;
  int dimension = 0;
  std::vector<StokesEntry<K>> entries;

  std::vector<std::string> unknowns() const {
    std::vector<std::string> out;
    for (const auto& e : entries) out.push_back(e.name);
    return out;
  }

  Mat<MPoly<K>> symbolic() const {
    Mat<MPoly<K>> m = Mat<MPoly<K>>::Constant(dimension, dimension, MPoly<K>());
    for (int i = 0; i < dimension; ++i) m(i, i) = MPoly<K>(K(1));
    for (const auto& e : entries) m(e.row, e.col) += MPoly<K>::variable(e.name, e.coefficient);
    return m;
  }

  /// Matrix with the unknowns replaced by values; every unknown must be assigned.
  Mat<K> instantiate(const std::map<std::string, K>& values) const {
    Mat<K> m = Mat<K>::Identity(dimension, dimension);
    for (const auto& e : entries) {
      auto it = values.find(e.name);
      if (it == values.end()) throw DomainError("no value for Stokes unknown " + e.name);
      m(e.row, e.col) = m(e.row, e.col) + e.coefficient * it->second;
    }
    return m;
  }
};

namespace detail {

inline std::string unknown_name(const std::string& first, const std::string& second) {
  if (first.size() == 1 && second.size() == 1) return "x" + first + second;
  return "x" + first + "," + second;
}

}  // namespace detail

/// Shape of St_d: one unknown per coordinate pair in Hom(V_from, V_to) for every pair
/// active at d, placed at (row in V_to, column in V_from).
template <class K>
StokesTemplate<K> stokes_template(const FormalData<K>& f, const Direction& d) {
  StokesTemplate<K> t;
  t.d = d;
  t.dimension = f.dimension();
  const auto off = f.offsets();
  const int nb = static_cast<int>(f.blocks.size());
  for (int a = 0; a < nb; ++a) {
    for (int b = 0; b < nb; ++b) {
      if (a == b) continue;
      const auto pd = detail::pair_directions(f, a, b);
      if (!pd || !detail::on_lattice(*pd, d)) continue;
      for (int c = off[a]; c < off[a] + f.blocks[a].dim; ++c) {
        for (int r = off[b]; r < off[b] + f.blocks[b].dim; ++r) {
          const std::string rl = f.label(r), cl = f.label(c);
          const std::string name =
              f.naming == UnknownNaming::RowCol ? detail::unknown_name(rl, cl) : detail::unknown_name(cl, rl);
          t.entries.push_back({r, c, name, K(1)});
        }
      }
    }
  }
  if (t.entries.empty()) throw DomainError("direction " + d.to_string() + " is not singular");
  std::sort(t.entries.begin(), t.entries.end(),
            [](const auto& x, const auto& y) { return std::pair(x.row, x.col) < std::pair(y.row, y.col); });
  return t;
}

/// γ^{−k}·A·γ^k (represents St_{d+k} when A = St_d).
template <class K, class S>
Mat<S> gamma_shift(const FormalData<K>& f, const Mat<S>& a, int k) {
  if (k == 0) return a;
  const Mat<K> g = matrix_power(f.gamma, k);
  const Mat<K> gi = matrix_power(f.gamma, -k);
  const Mat<S> gs = g.unaryExpr([](const K& x) { return S(x); });
  const Mat<S> gis = gi.unaryExpr([](const K& x) { return S(x); });
  return gis * a * gs;
}

/// Template transport: needs a monomial γ (one nonzero per column), so each unknown
/// lands in a single position with a scalar factor.
template <class K>
StokesTemplate<K> gamma_shift(const FormalData<K>& f, const StokesTemplate<K>& t, int k) {
  if (k == 0) return t;
  const Mat<K> g = matrix_power(f.gamma, k);
  const Mat<K> gi = matrix_power(f.gamma, -k);
  const int n = t.dimension;
  // G e_j = g_j e_{π(j)}
  std::vector<int> pi(n, -1);
  for (int j = 0; j < n; ++j)
    for (int r = 0; r < n; ++r)
      if (!ScalarTraits<K>::is_zero(g(r, j))) {
        if (pi[j] >= 0) throw DomainError("template gamma_shift needs a monomial gamma");
        pi[j] = r;
      }
  std::vector<int> inv(n);
  for (int j = 0; j < n; ++j) inv[pi[j]] = j;
  StokesTemplate<K> out;
  out.d = t.d.shifted(k);
  out.dimension = n;
  for (const auto& e : t.entries) {
    // G⁻¹ E_{rc} G = (G⁻¹ e_r)(e_cᵀ G)
    const int r2 = inv[e.row], c2 = inv[e.col];
    const K factor = gi(r2, e.row) * g(e.col, c2);
    out.entries.push_back({r2, c2, e.name, e.coefficient * factor});
  }
  std::sort(out.entries.begin(), out.entries.end(),
            [](const auto& x, const auto& y) { return std::pair(x.row, x.col) < std::pair(y.row, y.col); });
  return out;
}

}  // namespace stokeskit
