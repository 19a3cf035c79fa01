#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "stokeskit/cyclotomic.hpp"
#include "stokeskit/newton.hpp"
#include "stokeskit/operator.hpp"
#include "stokeskit/stokes.hpp"

namespace stokeskit {

/// Instance parameters; each entry reads only the fields it lists in `parameters`.
struct QdeParams {
  int n = 3;
  int m = 2;
  std::vector<int> weights{1, 1, 1};
  long a = 0, b = 0, c = 0;
};

struct QdeEntry {
  std::string name;
  std::string description;
  /// Which QdeParams fields this entry uses.
  std::vector<std::string> parameters;
  std::string source;
};

/// P^{n-1}, hypersurface, weighted, delPezzo, V5, V22.
const std::vector<QdeEntry>& qde_catalog();
/// Throws DomainError for an unknown name.
const QdeEntry& qde_lookup(std::string_view name);

/// Operator text for the instance (parse_operator reads it).
std::string qde_operator_text(const QdeEntry& entry, const QdeParams& params);
DiffOperator qde_operator(const QdeEntry& entry, const QdeParams& params);

enum class Applicability { PureRamified, MixedProp2, CatalogOnly };
std::string to_string(Applicability a);

struct QdeClassification {
  std::string name;
  std::string operator_text;
  NewtonPolygon polygon;
  Rational katz;
  Applicability applicability = Applicability::CatalogOnly;
  /// MixedProp2: dim V₀ and dim W; PureRamified: w_dim only.
  int v0_dim = 0;
  int w_dim = 0;
  std::vector<std::string> warnings;
};

/// Applicability follows the polygon: one slope 1/d of multiplicity d is pure
/// ramified; slopes {0: m', 1/k: k} are the V₀ ⊕ W shape; anything else is catalog only.
QdeClassification classify(const QdeEntry& entry, const QdeParams& params);

/// Upper-triangular G with G(i,j) = binom(n−1+j−i, n−1) for O, O(1), …, O(n−1) on P^{n−1}.
Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> gram_projective(int n);

enum class Verdict { Match, Mismatch, NotDecided };
std::string to_string(Verdict v);

struct DubrovinReport {
  int n = 0;
  StokesSolution<Cyclotomic> solution;
  /// Every solved |entry| is some binom(n, k), 0 < k < n.
  bool entries_are_binomials = false;
  /// St_{d_s}···St_{d_1} over the singular d in [0, 1/2).
  Mat<Cyclotomic> connection;
  Eigen::Matrix<long long, Eigen::Dynamic, Eigen::Dynamic> gram;
  /// Sorted |G(i,j)|, i < j.
  std::vector<long long> gram_upper_abs;
  /// Sorted nonzero |entries| off the diagonal of the connection product.
  std::vector<long long> connection_offdiag_abs;
  bool abs_multisets_equal = false;
  Verdict verdict = Verdict::NotDecided;
};

DubrovinReport dubrovin_check(int n);

/// Formal data at ∞ for classified instances of P^{n-1}, the hypersurface and the
/// weighted family (positive scalings of the eigenvalues are dropped).
std::optional<FormalData<std::complex<double>>> qde_formal_data(const QdeEntry& entry, const QdeParams& params);

struct QdeSolve {
  QdeClassification classification;
  FormalData<std::complex<double>> formal;
  std::vector<std::complex<double>> target;
  double monodromy_error = 0;
  StokesSolution<std::complex<double>> solution;
};

/// Stokes data with the numerical monodromy as target. Mixed shapes need
/// allow_mixed (γ-distinctness on V₀ is checked per instance).
QdeSolve solve_qde(const QdeEntry& entry, const QdeParams& params, double tol, bool allow_mixed);

}  // namespace stokeskit
