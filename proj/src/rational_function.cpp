#include "stokeskit/rational_function.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>

namespace stokeskit {

RationalFunc::RationalFunc(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw DomainError("division by zero rational function");
  if (num.is_zero()) {
    num_ = Poly();
    den_ = Poly(1);
    return;
  }
  // Move negative powers of z across so both sides are polynomials.
  const int lift = -std::min({0, num.valuation(), den.valuation()});
  Poly n = num.shifted(lift);
  Poly d = den.shifted(lift);
  if (d.terms().size() == 1) {
    // monomial denominator c·z^k: the gcd is a power of z
    const int k = std::min(d.valuation(), n.valuation());
    const GaussianRational inv = GaussianRational(1) / d.leading_coeff();
    num_ = n.shifted(-k).scaled(inv);
    den_ = Poly::monomial(GaussianRational(1), d.valuation() - k);
    return;
  }
  const Poly g = poly_gcd(n, d);
  if (g.degree() > 0) {
    n = poly_divmod(n, g).first;
    d = poly_divmod(d, g).first;
  }
  const GaussianRational lead = d.leading_coeff();
  num_ = n.scaled(GaussianRational(1) / lead);
  den_ = d.scaled(GaussianRational(1) / lead);
}

GaussianRational RationalFunc::constant_value() const {
  if (!is_constant()) throw DomainError("rational function is not constant");
  return num_.coeff(0);
}

RationalFunc& RationalFunc::operator+=(const RationalFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  // Henrici: with g = gcd(d1, d2) only g can share factors with the new numerator
  Poly g = poly_gcd(den_, o.den_);
  const Poly d1 = poly_divmod(den_, g).first;
  const Poly d2 = poly_divmod(o.den_, g).first;
  Poly n = num_ * d2 + o.num_ * d1;
  if (n.is_zero()) return *this = RationalFunc();
  if (g.degree() > 0) {
    const Poly h = poly_gcd(n, g);
    if (h.degree() > 0) {
      n = poly_divmod(n, h).first;
      g = poly_divmod(g, h).first;
    }
  }
  return *this = coprime(std::move(n), d1 * d2 * g);
}

RationalFunc& RationalFunc::operator-=(const RationalFunc& o) { return *this += -o; }

RationalFunc& RationalFunc::operator*=(const RationalFunc& o) {
  if (is_zero() || o.is_zero()) return *this = RationalFunc();
  if (is_polynomial() && o.is_polynomial()) {
    num_ = num_ * o.num_;
    return *this;
  }
  // both sides reduced: only the cross pairs can cancel
  Poly a = num_, b = den_, c = o.num_, d = o.den_;
  if (d.degree() > 0) {
    const Poly g = poly_gcd(a, d);
    if (g.degree() > 0) {
      a = poly_divmod(a, g).first;
      d = poly_divmod(d, g).first;
    }
  }
  if (b.degree() > 0) {
    const Poly g = poly_gcd(c, b);
    if (g.degree() > 0) {
      c = poly_divmod(c, g).first;
      b = poly_divmod(b, g).first;
    }
  }
  return *this = coprime(a * c, b * d);
}

RationalFunc& RationalFunc::operator/=(const RationalFunc& o) {
  if (o.is_zero()) throw DomainError("division by zero rational function");
  return *this = RationalFunc(num_ * o.den_, den_ * o.num_);
}

RationalFunc RationalFunc::operator-() const {
  RationalFunc r = *this;
  r.num_ = -num_;
  return r;
}

RationalFunc RationalFunc::delta() const {
  if (is_polynomial()) return RationalFunc(num_.delta(), den_);
  // g = gcd(d, δd), d = g·e, δd = g·f; (δn·e − n·f)/(d·e) is already reduced
  const Poly dd = den_.delta();
  const Poly g = poly_gcd(den_, dd);
  const Poly e = poly_divmod(den_, g).first;
  const Poly f = poly_divmod(dd, g).first;
  return coprime(num_.delta() * e - num_ * f, den_ * e);
}

std::vector<std::complex<double>> RationalFunc::nonzero_poles() const {
  const Poly d = den_.shifted(-den_.valuation());
  const int n = d.degree();
  if (n <= 0) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  const auto lead = d.leading_coeff().to_complex();
  for (int k = 1; k < n; ++k) companion(k, k - 1) = 1.0;
  for (int k = 0; k < n; ++k) companion(k, n - 1) = -d.coeff(k).to_complex() / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::string RationalFunc::to_string() const {
  if (is_polynomial()) {
    const std::string n = num_.to_string();
    return num_.terms().size() > 1 ? "(" + n + ")" : n;
  }
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

}  // namespace stokeskit
