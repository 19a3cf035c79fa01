#include "stokeskit/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numeric>

#include "stokeskit/errors.hpp"

namespace stokeskit {

namespace {

using Poly = std::vector<Rational>;  // low to high

void trim(Poly& p) {
  while (p.size() > 1 && sgn(p.back()) == 0) p.pop_back();
  if (p.empty()) p.emplace_back(0);
}

bool poly_is_zero(const Poly& p) {
  for (const auto& c : p)
    if (sgn(c) != 0) return false;
  return true;
}

int degree(const Poly& p) {
  for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k)
    if (sgn(p[k]) != 0) return k;
  return -1;
}

/// Quotient and remainder of a by b (b nonzero).
std::pair<Poly, Poly> divmod(Poly a, const Poly& b) {
  const int db = degree(b);
  int da = degree(a);
  Poly q(std::max(da - db + 1, 1), Rational(0));
  while (da >= db && da >= 0) {
    const Rational f = a[da] / b[db];
    q[da - db] = f;
    for (int k = 0; k <= db; ++k) a[da - db + k] -= f * b[k];
    da = degree(a);
  }
  trim(a);
  trim(q);
  return {q, a};
}

Poly mul(const Poly& a, const Poly& b) {
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

Poly sub(const Poly& a, const Poly& b) {
  Poly r(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

/// Remainder modulo the monic polynomial phi, padded to length deg(phi).
Poly reduce(Poly p, const Poly& phi) {
  const std::size_t d = phi.size() - 1;
  for (std::size_t top = p.size(); top-- > d;) {
    const Rational f = p[top];
    if (sgn(f) == 0) continue;
    for (std::size_t k = 0; k <= d; ++k) p[top - d + k] -= f * phi[k];
  }
  p.resize(d == 0 ? 1 : d, Rational(0));
  return p;
}

/// Inverse of a modulo phi via the extended Euclidean algorithm.
Poly inverse_mod(const Poly& a, const Poly& phi) {
  Poly r0 = phi, r1 = a;
  Poly s0{Rational(0)}, s1{Rational(1)};
  trim(r1);
  while (degree(r1) > 0) {
    auto [q, r] = divmod(r0, r1);
    Poly s = sub(s0, mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s);
  }
  if (degree(r1) < 0) throw DomainError("division by zero");
  for (auto& c : s1) c /= r1[0];
  return reduce(s1, phi);
}

std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

const std::vector<Rational>& cyclotomic_polynomial(unsigned long n) {
  static std::map<unsigned long, Poly> cache;
  {
    std::lock_guard lock(cache_mutex());
    if (auto it = cache.find(n); it != cache.end()) return it->second;
  }
  Poly p(n + 1, Rational(0));
  p[0] = -1;
  p[n] = 1;
  for (unsigned long d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    p = divmod(p, cyclotomic_polynomial(d)).first;
  }
  std::lock_guard lock(cache_mutex());
  return cache.emplace(n, std::move(p)).first->second;
}

Cyclotomic::Cyclotomic(unsigned long order, std::vector<Rational> coeffs)
    : order_(order), coeffs_(std::move(coeffs)) {}

Cyclotomic::Cyclotomic(const GaussianRational& g) {
  if (g.is_real()) {
    coeffs_ = {g.real()};
  } else {
    order_ = 4;
    coeffs_ = {g.real(), g.imag()};
  }
}

Cyclotomic Cyclotomic::exp_2pi_i(const Rational& r) {
  Rational frac = r - Rational(floor(r));
  frac.canonicalize();
  const unsigned long n = frac.get_den().get_ui();
  const unsigned long k = frac.get_num().get_ui();
  if (n == 1) return Cyclotomic(1);
  Poly p(n, Rational(0));
  p[k] = 1;
  return Cyclotomic(n, reduce(std::move(p), cyclotomic_polynomial(n)));
}

Cyclotomic Cyclotomic::exp_2pi_i(const GaussianRational& g) {
  if (!g.is_real()) throw DomainError("exact root of unity needs a real rational exponent");
  return exp_2pi_i(g.real());
}

Cyclotomic Cyclotomic::lifted(unsigned long order) const {
  if (order == order_) return *this;
  const unsigned long step = order / order_;
  Poly p(order, Rational(0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) p[k * step] += coeffs_[k];
  return Cyclotomic(order, reduce(std::move(p), cyclotomic_polynomial(order)));
}

bool Cyclotomic::is_zero() const { return poly_is_zero(coeffs_); }

bool Cyclotomic::is_rational() const {
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    if (sgn(coeffs_[k]) != 0) return false;
  return true;
}

Rational Cyclotomic::rational_value() const {
  if (!is_rational()) throw DomainError("cyclotomic number is not rational");
  return coeffs_[0];
}

Cyclotomic Cyclotomic::conj() const {
  if (order_ <= 2) return *this;
  Poly p(order_, Rational(0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k) p[(order_ - k) % order_] += coeffs_[k];
  return Cyclotomic(order_, reduce(std::move(p), cyclotomic_polynomial(order_)));
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  const unsigned long l = std::lcm(order_, o.order_);
  *this = lifted(l);
  const Cyclotomic b = o.lifted(l);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += b.coeffs_[k];
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
  const unsigned long l = std::lcm(order_, o.order_);
  *this = lifted(l);
  const Cyclotomic b = o.lifted(l);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= b.coeffs_[k];
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  const unsigned long l = std::lcm(order_, o.order_);
  const Cyclotomic a = lifted(l);
  const Cyclotomic b = o.lifted(l);
  *this = Cyclotomic(l, reduce(mul(a.coeffs_, b.coeffs_), cyclotomic_polynomial(l)));
  return *this;
}

Cyclotomic& Cyclotomic::operator/=(const Cyclotomic& o) {
  if (o.is_zero()) throw DomainError("division by zero");
  const unsigned long l = std::lcm(order_, o.order_);
  const Cyclotomic a = lifted(l);
  const Cyclotomic b = o.lifted(l);
  const Poly& phi = cyclotomic_polynomial(l);
  Poly inv = l <= 2 ? Poly{Rational(1) / b.coeffs_[0]} : inverse_mod(b.coeffs_, phi);
  *this = Cyclotomic(l, reduce(mul(a.coeffs_, inv), phi));
  return *this;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.order_ == b.order_) return a.coeffs_ == b.coeffs_;
  const unsigned long l = std::lcm(a.order_, b.order_);
  return a.lifted(l).coeffs_ == b.lifted(l).coeffs_;
}

std::string Cyclotomic::to_string() const {
  if (is_rational()) return stokeskit::to_string(coeffs_[0]);
  std::string out;
  const std::string root = "zeta" + std::to_string(order_);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (sgn(coeffs_[k]) == 0) continue;
    if (!out.empty()) out += " + ";
    out += stokeskit::to_string(coeffs_[k]);
    if (k > 0) out += "*" + root + (k > 1 ? "^" + std::to_string(k) : "");
  }
  return out;
}

std::optional<Rational> Cyclotomic::exact_turn() const {
  if (is_zero()) return std::nullopt;
  const auto z = to_complex<long double>();
  long double theta = std::atan2(z.imag(), z.real()) / (2.0L * std::numbers::pi_v<long double>);
  if (theta < 0) theta += 1;
  // x / conj(x) = e^{4πiθ} is a root of unity of Q(ζ_N), so 4N·θ is an integer.
  Rational t = rationalize(static_cast<double>(theta), static_cast<long>(4 * order_));
  if (t >= 1) t -= 1;
  const Cyclotomic w = *this * exp_2pi_i(Rational(-t));
  if (w != w.conj() || w.to_complex<long double>().real() <= 0) return std::nullopt;
  return t;
}

}  // namespace stokeskit
