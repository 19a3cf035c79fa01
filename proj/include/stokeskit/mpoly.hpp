#pragma once

#include <ostream>

#include <map>
#include <set>
#include <string>

#include "stokeskit/eigen_support.hpp"
#include "stokeskit/errors.hpp"
#include "stokeskit/scalar_traits.hpp"

namespace stokeskit {

/// Product of named unknowns, e.g. {x10: 1, x02: 1}. The empty monomial is 1.
using Monomial = std::map<std::string, int>;

std::string to_string(const Monomial& m);

/// Multivariate polynomial in named unknowns over the field K.
template <class K>
class MPoly {
 public:
  using Terms = std::map<Monomial, K>;

  MPoly() = default;
  MPoly(const K& c) { add(Monomial{}, c); }  // NOLINT(google-explicit-constructor)
  MPoly(int c) : MPoly(K(c)) {}  // NOLINT

  static MPoly variable(const std::string& name, const K& coeff = K(1)) {
    MPoly p;
    p.add(Monomial{{name, 1}}, coeff);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }
  K constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? K(0) : it->second;
  }
  K coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? K(0) : it->second;
  }
  int total_degree() const {
    int d = 0;
    for (const auto& [m, c] : terms_) {
      int s = 0;
      for (const auto& [v, e] : m) s += e;
      d = std::max(d, s);
    }
    return d;
  }
  std::set<std::string> variables() const {
    std::set<std::string> out;
    for (const auto& [m, c] : terms_)
      for (const auto& [v, e] : m) out.insert(v);
    return out;
  }

  void add(const Monomial& m, const K& c) {
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) it->second = it->second + c;
    if (ScalarTraits<K>::is_zero(it->second)) terms_.erase(it);
  }

  MPoly& operator+=(const MPoly& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  MPoly& operator-=(const MPoly& o) {
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  MPoly operator-() const {
    MPoly r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    MPoly r;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m = ma;
        for (const auto& [v, e] : mb) m[v] += e;
        r.add(m, ca * cb);
      }
    }
    return r;
  }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
  friend bool operator==(const MPoly& a, const MPoly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const MPoly& a, const MPoly& b) { return !(a == b); }

  /// Replaces the listed unknowns by values; other unknowns stay symbolic.
  MPoly substitute(const std::map<std::string, K>& values) const {
    MPoly r;
    for (const auto& [m, c] : terms_) {
      Monomial rest;
      K coeff = c;
      for (const auto& [v, e] : m) {
        if (auto it = values.find(v); it != values.end()) {
          for (int k = 0; k < e; ++k) coeff = coeff * it->second;
        } else {
          rest.emplace(v, e);
        }
      }
      r.add(rest, coeff);
    }
    return r;
  }

  /// Full evaluation; every unknown must have a value.
  K evaluate(const std::map<std::string, K>& values) const {
    const MPoly r = substitute(values);
    if (!r.is_constant()) throw DomainError("evaluate: unknowns left unassigned");
    return r.constant_term();
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [m, c] : terms_) {
      if (!out.empty()) out += " + ";
      std::string cs = stokeskit::to_string(c);
      out += m.empty() ? "(" + cs + ")" : "(" + cs + ")*" + stokeskit::to_string(m);
    }
    return out;
  }

 private:
  Terms terms_;
};

inline std::string to_string(const Monomial& m) {
  std::string out;
  for (const auto& [v, e] : m) {
    if (!out.empty()) out += "*";
    out += v;
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out.empty() ? "1" : out;
}

template <class K>
std::ostream& operator<<(std::ostream& os, const MPoly<K>& p) {
  return os << p.to_string();
}

}  // namespace stokeskit

namespace Eigen {
template <class K>
struct NumTraits<stokeskit::MPoly<K>> : GenericNumTraits<stokeskit::MPoly<K>> {
  typedef stokeskit::MPoly<K> Real;
  typedef stokeskit::MPoly<K> NonInteger;
  typedef stokeskit::MPoly<K> Nested;
  typedef stokeskit::MPoly<K> Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 32,
    MulCost = 64
  };
  static inline int digits10() { return 0; }
};
}  // namespace Eigen
