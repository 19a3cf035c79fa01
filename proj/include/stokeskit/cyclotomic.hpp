#pragma once

#include <ostream>

#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "stokeskit/gaussian.hpp"
#include "stokeskit/rational.hpp"

namespace stokeskit {

/// Exact element of a cyclotomic field Q(ζ_N), ζ_N = e^{2πi/N}.
///
/// Stored as the remainder Σ c_k ζ_N^k (k < φ(N)) modulo the N-th cyclotomic
/// polynomial, which is a Q-basis of Q(ζ_N); the representation is canonical for a
/// fixed N. Binary operations lift both operands to Q(ζ_lcm). Roots of unity
/// e^{2πi r} with r ∈ Q are exact, which is what characteristic-polynomial
/// matching against monodromy eigenvalues e^{2πi a} needs.
class Cyclotomic {
 public:
  Cyclotomic() : coeffs_{Rational(0)} {}
  Cyclotomic(int v) : coeffs_{Rational(v)} {}  // NOLINT(google-explicit-constructor)
  Cyclotomic(const Rational& v) : coeffs_{v} {}  // NOLINT
  Cyclotomic(const GaussianRational& g);  // NOLINT

  /// e^{2πi r}.
  static Cyclotomic exp_2pi_i(const Rational& r);
  /// e^{2πi g}; g must be real.
  static Cyclotomic exp_2pi_i(const GaussianRational& g);

  unsigned long order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;
  /// Value when is_rational().
  Rational rational_value() const;
  /// Exact complex conjugate (ζ ↦ ζ^{-1}).
  Cyclotomic conj() const;

  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o);
  Cyclotomic& operator/=(const Cyclotomic& o);
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
  Cyclotomic operator-() const;

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
  friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

  template <class T = double>
  std::complex<T> to_complex() const {
    // long double accumulation keeps the numeric view well inside 1e-15 for small N.
    std::complex<long double> acc{0, 0};
    const long double turn = 2.0L * std::numbers::pi_v<long double> / static_cast<long double>(order_);
    for (std::size_t k = 0; k < coeffs_.size(); ++k) {
      if (sgn(coeffs_[k]) == 0) continue;
      const long double c = static_cast<long double>(coeffs_[k].get_d());
      acc += c * std::polar(1.0L, turn * static_cast<long double>(k));
    }
    return {static_cast<T>(acc.real()), static_cast<T>(acc.imag())};
  }

  /// "3", "-1/2", or "1/2*z12^0 + ..." style sum in powers of zeta_N.
  std::string to_string() const;

  /// If this equals ρ·e^{2πiθ} with ρ > 0 real and θ ∈ Q, returns θ ∈ [0,1).
  /// Exactness is verified in the field, the candidate comes from a rationalized float.
  std::optional<Rational> exact_turn() const;

 private:
  Cyclotomic(unsigned long order, std::vector<Rational> coeffs);
  Cyclotomic lifted(unsigned long order) const;

  unsigned long order_ = 1;
  std::vector<Rational> coeffs_;
};

/// Coefficients (low to high) of the N-th cyclotomic polynomial.
const std::vector<Rational>& cyclotomic_polynomial(unsigned long n);

inline std::string to_string(const Cyclotomic& c) { return c.to_string(); }

inline std::ostream& operator<<(std::ostream& os, const Cyclotomic& c) { return os << c.to_string(); }

}  // namespace stokeskit
