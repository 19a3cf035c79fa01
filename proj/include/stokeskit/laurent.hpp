#pragma once

#include <climits>
#include <complex>
#include <map>
#include <string>
#include <utility>

#include "stokeskit/errors.hpp"
#include "stokeskit/scalar_traits.hpp"

namespace stokeskit {

/// Finite sum Σ c_e z^e, e ∈ Z. No zero coefficient is ever stored.
template <class K>
class LaurentPoly {
 public:
  using Terms = std::map<int, K>;

  LaurentPoly() = default;
  LaurentPoly(const K& c) { set(0, c); }  // NOLINT(google-explicit-constructor)
  LaurentPoly(int c) : LaurentPoly(K(c)) {}  // NOLINT

  static LaurentPoly monomial(const K& c, int exponent) {
    LaurentPoly p;
    p.set(exponent, c);
    return p;
  }
  static LaurentPoly z() { return monomial(K(1), 1); }

  bool is_zero() const { return terms_.empty(); }
  /// Highest exponent; INT_MIN for the zero polynomial.
  int degree() const { return terms_.empty() ? INT_MIN : terms_.rbegin()->first; }
  /// Lowest exponent; INT_MAX for the zero polynomial.
  int valuation() const { return terms_.empty() ? INT_MAX : terms_.begin()->first; }
  bool is_polynomial() const { return terms_.empty() || valuation() >= 0; }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }

  K coeff(int e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? K(0) : it->second;
  }
  K leading_coeff() const { return terms_.empty() ? K(0) : terms_.rbegin()->second; }
  const Terms& terms() const { return terms_; }

  void set(int e, const K& c) {
    if (ScalarTraits<K>::is_zero(c)) {
      terms_.erase(e);
    } else {
      terms_[e] = c;
    }
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) set(e, coeff(e) + c);
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.terms_) set(e, coeff(e) - c);
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  LaurentPoly operator-() const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.terms_[e] = -c;
    return r;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_) r.set(ea + eb, r.coeff(ea + eb) + ca * cb);
    return r;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  LaurentPoly scaled(const K& s) const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.set(e, c * s);
    return r;
  }
  /// Multiplication by z^k.
  LaurentPoly shifted(int k) const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.terms_[e + k] = c;
    return r;
  }
  /// δ = z d/dz, acting as z^e ↦ e z^e.
  LaurentPoly delta() const {
    LaurentPoly r;
    for (const auto& [e, c] : terms_) r.set(e, c * K(e));
    return r;
  }

  template <class T>
  std::complex<T> evaluate(const std::complex<T>& z) const {
    std::complex<T> acc{0, 0};
    for (const auto& [e, c] : terms_) {
      const auto cd = ScalarTraits<K>::to_complex(c);
      acc += std::complex<T>(static_cast<T>(cd.real()), static_cast<T>(cd.imag())) * std::pow(z, e);
    }
    return acc;
  }

  /// Parser-readable text, highest power first.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!out.empty()) out += " + ";
      const auto& [e, c] = *it;
      const std::string cs = stokeskit::to_string(c);
      if (e == 0) {
        out += cs;
      } else {
        out += cs + "*z";
        if (e != 1) out += e < 0 ? "^(" + std::to_string(e) + ")" : "^" + std::to_string(e);
      }
    }
    return out;
  }

 private:
  Terms terms_;
};

/// Quotient and remainder for polynomials (nonnegative exponents) over a field.
template <class K>
std::pair<LaurentPoly<K>, LaurentPoly<K>> poly_divmod(LaurentPoly<K> a, const LaurentPoly<K>& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  const int db = b.degree();
  const K lb = b.leading_coeff();
  LaurentPoly<K> q;
  while (!a.is_zero() && a.degree() >= db) {
    const int shift = a.degree() - db;
    const K f = a.leading_coeff() / lb;
    q.set(shift, q.coeff(shift) + f);
    a -= b.shifted(shift).scaled(f);
  }
  return {q, a};
}

/// Monic greatest common divisor (zero if both are zero).
template <class K>
LaurentPoly<K> poly_gcd(LaurentPoly<K> a, LaurentPoly<K> b) {
  if (!b.is_zero()) b = b.scaled(K(1) / b.leading_coeff());
  while (!b.is_zero()) {
    auto r = poly_divmod(std::move(a), b).second;
    a = std::move(b);
    // monic remainders keep coefficient growth down
    b = r.is_zero() ? std::move(r) : r.scaled(K(1) / r.leading_coeff());
  }
  if (a.is_zero()) return a;
  return a.scaled(K(1) / a.leading_coeff());
}

}  // namespace stokeskit
