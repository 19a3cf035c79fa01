#pragma once

#include <complex>
#include <optional>
#include <ostream>
#include <string>

#include "stokeskit/rational.hpp"

namespace stokeskit {

/// Exact complex number re + im*i with rational parts.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(int v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rational re) : re_(std::move(re)) {}  // NOLINT
  GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational i() { return {0, 1}; }

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  Rational norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  GaussianRational operator-() const { return {-re_, -im_}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

  template <class T = double>
  std::complex<T> to_complex() const {
    return {static_cast<T>(re_.get_d()), static_cast<T>(im_.get_d())};
  }

  /// Text the operator parser reads back: "3/2", "(-1/3)", "(1/2+3*i)".
  std::string to_string() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

inline std::string to_string(const GaussianRational& g) { return g.to_string(); }

inline std::ostream& operator<<(std::ostream& os, const GaussianRational& g) { return os << g.to_string(); }

/// A square root in Q(i) when one exists (real part ≥ 0, imaginary part ≥ 0 on the real axis).
std::optional<GaussianRational> exact_sqrt(const GaussianRational& x);

}  // namespace stokeskit
