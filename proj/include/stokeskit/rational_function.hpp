#pragma once

#include <ostream>

#include <complex>
#include <string>
#include <vector>

#include "stokeskit/eigen_support.hpp"
#include "stokeskit/gaussian.hpp"
#include "stokeskit/laurent.hpp"

namespace stokeskit {

using Poly = LaurentPoly<GaussianRational>;

/// Element of C(z) with Gaussian-rational constants.
///
/// Canonical form: numerator and denominator are polynomials (nonnegative exponents)
/// with no common factor, and the denominator is monic. Equal functions therefore
/// compare equal structurally.
class RationalFunc {
 public:
  RationalFunc() : den_(1) {}
  RationalFunc(int c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  RationalFunc(const GaussianRational& c) : num_(c), den_(1) {}  // NOLINT
  RationalFunc(const Poly& p) : RationalFunc(p, Poly(1)) {}  // NOLINT
  RationalFunc(const Poly& num, const Poly& den);

  static RationalFunc z() { return RationalFunc(Poly::z()); }

  const Poly& numerator() const { return num_; }
  const Poly& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_constant() const { return is_polynomial() && num_.is_constant(); }
  GaussianRational constant_value() const;

  /// deg num − deg den: the order of growth at z = ∞.
  int degree_at_infinity() const { return num_.degree() - den_.degree(); }

  RationalFunc& operator+=(const RationalFunc& o);
  RationalFunc& operator-=(const RationalFunc& o);
  RationalFunc& operator*=(const RationalFunc& o);
  RationalFunc& operator/=(const RationalFunc& o);
  friend RationalFunc operator+(RationalFunc a, const RationalFunc& b) { return a += b; }
  friend RationalFunc operator-(RationalFunc a, const RationalFunc& b) { return a -= b; }
  friend RationalFunc operator*(RationalFunc a, const RationalFunc& b) { return a *= b; }
  friend RationalFunc operator/(RationalFunc a, const RationalFunc& b) { return a /= b; }
  RationalFunc operator-() const;
  friend bool operator==(const RationalFunc& a, const RationalFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunc& a, const RationalFunc& b) { return !(a == b); }

  /// δ(f) = z f'(z).
  RationalFunc delta() const;

  template <class T>
  std::complex<T> evaluate(const std::complex<T>& z) const {
    return num_.evaluate(z) / den_.evaluate(z);
  }

  bool has_pole_at_zero() const { return !den_.is_zero() && den_.valuation() > 0; }
  /// Numerical roots of the denominator other than z = 0.
  std::vector<std::complex<double>> nonzero_poles() const;

  std::string to_string() const;

 private:
  /// num/den already coprime polynomials with den monic.
  static RationalFunc coprime(Poly num, Poly den) {
    RationalFunc r;
    if (num.is_zero()) return r;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    return r;
  }

  Poly num_;
  Poly den_;
};

inline std::string to_string(const RationalFunc& f) { return f.to_string(); }

inline std::ostream& operator<<(std::ostream& os, const RationalFunc& f) { return os << f.to_string(); }

}  // namespace stokeskit

namespace Eigen {
STOKESKIT_EXACT_NUMTRAITS(stokeskit::RationalFunc)
}  // namespace Eigen
