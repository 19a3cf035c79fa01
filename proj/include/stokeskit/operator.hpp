#pragma once

#include <ostream>

#include <string>
#include <vector>

#include "stokeskit/rational_function.hpp"

namespace stokeskit {

/// Element of C(z)[δ], δ = z d/dz, with δ·f = f·δ + δ(f).
///
/// Stored as Σ c_i δ^i (coefficients on the left). The zero operator has degree -1.
class DiffOperator {
 public:
  DiffOperator() = default;
  DiffOperator(const RationalFunc& c);  // NOLINT(google-explicit-constructor)
  DiffOperator(int c) : DiffOperator(RationalFunc(c)) {}  // NOLINT
  explicit DiffOperator(std::vector<RationalFunc> coeffs);

  static DiffOperator delta();
  static DiffOperator z() { return DiffOperator(RationalFunc::z()); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<RationalFunc>& coeffs() const { return coeffs_; }
  /// c_i, zero beyond the degree.
  RationalFunc coeff(int i) const;

  DiffOperator& operator+=(const DiffOperator& o);
  DiffOperator& operator-=(const DiffOperator& o);
  friend DiffOperator operator+(DiffOperator a, const DiffOperator& b) { return a += b; }
  friend DiffOperator operator-(DiffOperator a, const DiffOperator& b) { return a -= b; }
  DiffOperator operator-() const;
  /// Noncommutative product.
  friend DiffOperator operator*(const DiffOperator& a, const DiffOperator& b);
  friend bool operator==(const DiffOperator& a, const DiffOperator& b) { return a.coeffs_ == b.coeffs_; }
  friend bool operator!=(const DiffOperator& a, const DiffOperator& b) { return !(a == b); }

  /// L(f) = Σ c_i δ^i(f).
  RationalFunc apply(const RationalFunc& f) const;

  /// Canonical text "c_d*delta^d + ... + c_0"; parse_operator reads it back exactly.
  std::string to_string() const;

 private:
  void trim();
  std::vector<RationalFunc> coeffs_;
};

DiffOperator op_multiply(const DiffOperator& a, const DiffOperator& b);
DiffOperator pow(const DiffOperator& a, unsigned n);

inline std::ostream& operator<<(std::ostream& os, const DiffOperator& op) { return os << op.to_string(); }

}  // namespace stokeskit
