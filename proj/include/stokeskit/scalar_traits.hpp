#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <complex>
#include <numbers>
#include <optional>
#include <string>

#include "stokeskit/cyclotomic.hpp"
#include "stokeskit/gaussian.hpp"
#include "stokeskit/rational.hpp"

namespace stokeskit {

/// Uniform access to the constant fields used by the formal and Stokes layers:
/// exact `Cyclotomic` / `GaussianRational`, and numeric `std::complex<T>`.
template <class K>
struct ScalarTraits;

template <>
struct ScalarTraits<Cyclotomic> {
  static constexpr bool is_exact = true;
  static bool is_zero(const Cyclotomic& x) { return x.is_zero(); }
  static double magnitude(const Cyclotomic& x) { return std::abs(x.to_complex()); }
  static std::complex<double> to_complex(const Cyclotomic& x) { return x.to_complex(); }
  static Cyclotomic from_gaussian(const GaussianRational& g) { return Cyclotomic(g); }
  static Cyclotomic exp_2pi_i(const Rational& r) { return Cyclotomic::exp_2pi_i(r); }
  static Cyclotomic exp_2pi_i(const GaussianRational& g) { return Cyclotomic::exp_2pi_i(g); }
  static Cyclotomic conj(const Cyclotomic& x) { return x.conj(); }
  static std::optional<Rational> exact_turn(const Cyclotomic& x) { return x.exact_turn(); }
};

template <>
struct ScalarTraits<GaussianRational> {
  static constexpr bool is_exact = true;
  static bool is_zero(const GaussianRational& x) { return x.is_zero(); }
  static double magnitude(const GaussianRational& x) { return std::abs(x.to_complex()); }
  static std::complex<double> to_complex(const GaussianRational& x) { return x.to_complex(); }
  static GaussianRational from_gaussian(const GaussianRational& g) { return g; }
  static GaussianRational conj(const GaussianRational& x) { return x.conj(); }
};

template <class T>
struct ScalarTraits<std::complex<T>> {
  using K = std::complex<T>;
  static constexpr bool is_exact = false;
  static bool is_zero(const K& x) { return x == K(0); }
  static double magnitude(const K& x) { return static_cast<double>(std::abs(x)); }
  static std::complex<double> to_complex(const K& x) { return {static_cast<double>(x.real()), static_cast<double>(x.imag())}; }
  static K from_gaussian(const GaussianRational& g) { return g.to_complex<T>(); }
  static K exp_2pi_i(const Rational& r) { return exp_2pi_i(K(static_cast<T>(r.get_d()), 0)); }
  static K exp_2pi_i(const GaussianRational& g) { return exp_2pi_i(g.to_complex<T>()); }
  static K exp_2pi_i(const K& a) { return std::exp(K(0, 2 * std::numbers::pi_v<T>) * a); }
  static K conj(const K& x) { return std::conj(x); }
  static std::optional<Rational> exact_turn(const K&) { return std::nullopt; }
};

template <class T>
std::string to_string(const std::complex<T>& x) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.17g%+.17g*i)", static_cast<double>(x.real()), static_cast<double>(x.imag()));
  return buf;
}

/// Exact equality, or relative 1e-9 closeness for floating scalars.
template <class K>
bool approx_equal(const K& a, const K& b) {
  if constexpr (ScalarTraits<K>::is_exact) {
    return a == b;
  } else {
    const double scale = std::max({1.0, ScalarTraits<K>::magnitude(a), ScalarTraits<K>::magnitude(b)});
    return ScalarTraits<K>::magnitude(a - b) <= 1e-9 * scale;
  }
}

}  // namespace stokeskit
