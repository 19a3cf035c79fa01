#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "stokeskit/eigen_support.hpp"
#include "stokeskit/errors.hpp"
#include "stokeskit/scalar_traits.hpp"

namespace stokeskit {

/// Pivot threshold: exact fields test for zero, complex fields compare against a
/// relative tolerance.
template <class K>
bool negligible(const K& x, double scale) {
  if constexpr (ScalarTraits<K>::is_exact) {
    return ScalarTraits<K>::is_zero(x);
  } else {
    return ScalarTraits<K>::magnitude(x) <= 1e-11 * std::max(1.0, scale);
  }
}

template <class K>
double max_magnitude(const Mat<K>& a) {
  double m = 0;
  for (Eigen::Index r = 0; r < a.rows(); ++r)
    for (Eigen::Index c = 0; c < a.cols(); ++c) m = std::max(m, ScalarTraits<K>::magnitude(a(r, c)));
  return m;
}

/// Reduced row echelon form in place; returns the pivot columns.
template <class K>
std::vector<Eigen::Index> row_reduce(Mat<K>& a, Eigen::Index ncols_to_pivot) {
  const double scale = max_magnitude(a);
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < ncols_to_pivot && row < a.rows(); ++col) {
    Eigen::Index best = -1;
    double best_mag = -1;
    for (Eigen::Index r = row; r < a.rows(); ++r) {
      if (negligible(a(r, col), scale)) continue;
      const double m = ScalarTraits<K>::magnitude(a(r, col));
      if (m > best_mag) {
        best = r;
        best_mag = m;
        if constexpr (ScalarTraits<K>::is_exact) break;
      }
    }
    if (best < 0) continue;
    a.row(row).swap(a.row(best));
    const K inv = K(1) / a(row, col);
    for (Eigen::Index c = 0; c < a.cols(); ++c) a(row, c) = a(row, c) * inv;
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
      if (r == row || ScalarTraits<K>::is_zero(a(r, col))) continue;
      const K f = a(r, col);
      for (Eigen::Index c = 0; c < a.cols(); ++c) a(r, c) = a(r, c) - f * a(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class K>
struct LinearSolution {
  Vec<K> x;
  Eigen::Index rank = 0;
  /// Largest magnitude of an equation left unsatisfied after elimination (0 if consistent).
  double inconsistency = 0;
};

/// Solves A·x = b for a unique x. A may have more rows than columns; the extra
/// equations must be consistent. Throws SingularSystemError when x is not unique or
/// (exact fields) the system is inconsistent.
template <class K>
LinearSolution<K> solve_linear(const Mat<K>& a, const Vec<K>& b) {
  if (a.rows() != b.rows()) throw DomainError("solve_linear: dimension mismatch");
  Mat<K> aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  const auto pivots = row_reduce(aug, a.cols());
  LinearSolution<K> out;
  out.rank = static_cast<Eigen::Index>(pivots.size());
  if (out.rank < a.cols()) {
    throw SingularSystemError("linear system is rank deficient (rank " + std::to_string(out.rank) + " of " +
                              std::to_string(a.cols()) + " unknowns)");
  }
  for (Eigen::Index r = out.rank; r < aug.rows(); ++r)
    out.inconsistency = std::max(out.inconsistency, ScalarTraits<K>::magnitude(aug(r, a.cols())));
  if constexpr (ScalarTraits<K>::is_exact) {
    if (out.inconsistency > 0) throw SingularSystemError("linear system is inconsistent");
  }
  out.x = Vec<K>::Constant(a.cols(), K(0));
  for (Eigen::Index r = 0; r < out.rank; ++r) out.x(pivots[r]) = aug(r, a.cols());
  return out;
}

/// Basis of {x : A·x = 0}, one vector per column.
template <class K>
Mat<K> nullspace(const Mat<K>& a) {
  Mat<K> r = a;
  const auto pivots = row_reduce(r, a.cols());
  std::vector<Eigen::Index> free;
  for (Eigen::Index c = 0; c < a.cols(); ++c)
    if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free.push_back(c);
  Mat<K> basis = Mat<K>::Constant(a.cols(), static_cast<Eigen::Index>(free.size()), K(0));
  for (std::size_t k = 0; k < free.size(); ++k) {
    basis(free[k], static_cast<Eigen::Index>(k)) = K(1);
    for (std::size_t p = 0; p < pivots.size(); ++p)
      basis(pivots[p], static_cast<Eigen::Index>(k)) = -r(static_cast<Eigen::Index>(p), free[k]);
  }
  return basis;
}

template <class K>
Mat<K> inverse(const Mat<K>& a) {
  if (a.rows() != a.cols()) throw DomainError("inverse of a non-square matrix");
  const Eigen::Index n = a.rows();
  Mat<K> aug(n, 2 * n);
  aug.leftCols(n) = a;
  aug.rightCols(n) = Mat<K>::Identity(n, n);
  const auto pivots = row_reduce(aug, n);
  if (static_cast<Eigen::Index>(pivots.size()) < n) throw SingularSystemError("matrix is singular");
  return aug.rightCols(n);
}

/// Monic characteristic polynomial det(λI − A), leading coefficient first.
///
/// Samuelson–Berkowitz recursion: division free, so it works for matrices over any
/// commutative ring (including polynomial entries).
template <class R>
std::vector<R> charpoly(const Mat<R>& a) {
  if (a.rows() != a.cols()) throw DomainError("characteristic polynomial of a non-square matrix");
  const Eigen::Index n = a.rows();
  std::vector<R> p{R(1)};
  for (Eigen::Index r = 1; r <= n; ++r) {
    const Eigen::Index m = r - 1;  // size of the leading block A_{r-1}
    // t = [1, −a_rr, −R·C, −R·A·C, …, −R·A^{r−2}·C]
    std::vector<R> t{R(1), -a(m, m)};
    if (m > 0) {
      Mat<R> v = a.block(0, m, m, 1);  // C
      for (Eigen::Index k = 0; k + 1 < r; ++k) {
        R dot(0);
        for (Eigen::Index j = 0; j < m; ++j) dot = dot + a(m, j) * v(j, 0);
        t.push_back(-dot);
        if (k + 2 < r) {
          Mat<R> next(m, 1);
          for (Eigen::Index i = 0; i < m; ++i) {
            R acc(0);
            for (Eigen::Index j = 0; j < m; ++j) acc = acc + a(i, j) * v(j, 0);
            next(i, 0) = acc;
          }
          v = next;
        }
      }
    }
    std::vector<R> q(static_cast<std::size_t>(r + 1), R(0));
    for (std::size_t i = 0; i <= static_cast<std::size_t>(r); ++i)
      for (std::size_t j = 0; j < p.size() && j <= i; ++j)
        if (i - j < t.size()) q[i] = q[i] + t[i - j] * p[j];
    p = std::move(q);
  }
  return p;
}

template <class K>
K determinant(const Mat<K>& a) {
  const auto p = charpoly(a);
  return (a.rows() % 2 == 0) ? p.back() : K(-p.back());
}

/// Matrix power for any integer exponent (negative exponents invert).
template <class K>
Mat<K> matrix_power(const Mat<K>& a, int k) {
  Mat<K> base = k < 0 ? inverse(a) : a;
  Mat<K> out = Mat<K>::Identity(a.rows(), a.cols());
  for (int i = 0; i < std::abs(k); ++i) out = out * base;
  return out;
}

}  // namespace stokeskit
