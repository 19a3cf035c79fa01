#include "stokeskit/system.hpp"

#include <cmath>

#include "stokeskit/errors.hpp"

namespace stokeskit {

MatrixSystem::MatrixSystem(Mat<RationalFunc> b) : b_(std::move(b)) {
  if (b_.rows() != b_.cols() || b_.rows() == 0) throw DomainError("system matrix must be square and nonempty");
  for (Eigen::Index r = 0; r < b_.rows(); ++r) {
    for (Eigen::Index c = 0; c < b_.cols(); ++c) {
      const RationalFunc& f = b_(r, c);
      if (f.is_zero()) continue;
      if (f.has_pole_at_zero() || f.numerator().valuation() == 0) singular_at_zero_ = true;
      if (f.degree_at_infinity() >= 0) singular_at_infinity_ = true;
      for (const auto& p : f.nonzero_poles()) {
        bool seen = false;
        for (const auto& q : poles_) seen = seen || std::abs(p - q) < 1e-12;
        if (!seen) poles_.push_back(p);
      }
    }
  }
}

bool MatrixSystem::is_polynomial() const {
  for (Eigen::Index r = 0; r < b_.rows(); ++r)
    for (Eigen::Index c = 0; c < b_.cols(); ++c)
      if (!b_(r, c).is_polynomial()) return false;
  return true;
}

MatrixSystem to_system(const DiffOperator& op) {
  const int d = op.degree();
  if (d < 1) throw DomainError("companion system needs an operator of degree >= 1");
  Mat<RationalFunc> b = Mat<RationalFunc>::Constant(d, d, RationalFunc(0));
  for (int k = 0; k + 1 < d; ++k) b(k, k + 1) = RationalFunc(1);
  const RationalFunc lead = op.coeff(d);
  for (int k = 0; k < d; ++k) b(d - 1, k) = -op.coeff(k) / lead;
  return MatrixSystem(std::move(b));
}

}  // namespace stokeskit
