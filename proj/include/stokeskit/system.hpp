#pragma once

#include <complex>
#include <vector>

#include <Eigen/Core>

#include "stokeskit/operator.hpp"

namespace stokeskit {

/// First-order system δY = B(z)·Y, i.e. dY/dz = (B(z)/z)·Y.
class MatrixSystem {
 public:
  explicit MatrixSystem(Mat<RationalFunc> b);

  int dimension() const { return static_cast<int>(b_.rows()); }
  const Mat<RationalFunc>& matrix() const { return b_; }

  /// Finite poles of B other than z = 0.
  const std::vector<std::complex<double>>& nonzero_poles() const { return poles_; }
  /// z = 0 is singular unless B is holomorphic there with B(0) = 0.
  bool singular_at_zero() const { return singular_at_zero_; }
  /// z = ∞ is singular unless B is holomorphic there with B(∞) = 0.
  bool singular_at_infinity() const { return singular_at_infinity_; }
  /// True when every entry of B is polynomial in z.
  bool is_polynomial() const;

  /// Numerical B(z).
  template <class T>
  Eigen::Matrix<std::complex<T>, Eigen::Dynamic, Eigen::Dynamic> evaluate(const std::complex<T>& z) const {
    Eigen::Matrix<std::complex<T>, Eigen::Dynamic, Eigen::Dynamic> m(b_.rows(), b_.cols());
    for (Eigen::Index r = 0; r < b_.rows(); ++r)
      for (Eigen::Index c = 0; c < b_.cols(); ++c) m(r, c) = b_(r, c).is_zero() ? std::complex<T>(0) : b_(r, c).evaluate(z);
    return m;
  }

 private:
  Mat<RationalFunc> b_;
  std::vector<std::complex<double>> poles_;
  bool singular_at_zero_ = false;
  bool singular_at_infinity_ = false;
};

/// Companion system of a degree-d operator: Y = (y, δy, …, δ^{d-1}y), superdiagonal 1,
/// last row (−c_0/c_d, …, −c_{d−1}/c_d).
MatrixSystem to_system(const DiffOperator& op);

}  // namespace stokeskit
