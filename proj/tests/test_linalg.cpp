#include <complex>
#include <random>

#include "doctest.h"
#include "stokeskit/linalg.hpp"
#include "stokeskit/mpoly.hpp"

using namespace stokeskit;
using C = std::complex<double>;

namespace {

// Independent oracle: det(λI − A) by Laplace expansion over univariate polynomials.
using UPoly = std::vector<GaussianRational>;  // low to high

UPoly padd(const UPoly& a, const UPoly& b) {
  UPoly r(std::max(a.size(), b.size()), GaussianRational(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = r[i] + a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
  return r;
}
UPoly pmul(const UPoly& a, const UPoly& b) {
  UPoly r(a.size() + b.size() - 1, GaussianRational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
  return r;
}
UPoly laplace(const std::vector<std::vector<UPoly>>& m) {
  const std::size_t n = m.size();
  if (n == 1) return m[0][0];
  UPoly acc{GaussianRational(0)};
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<UPoly>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<UPoly> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    UPoly term = pmul(m[0][c], laplace(minor));
    if (c % 2 == 1)
      for (auto& x : term) x = -x;
    acc = padd(acc, term);
  }
  return acc;
}

Mat<GaussianRational> random_gaussian(int n, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-4, 4), q(1, 3);
  Mat<GaussianRational> a(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) a(r, c) = GaussianRational(make_rational(d(rng), q(rng)), make_rational(d(rng), q(rng)));
  return a;
}

}  // namespace

TEST_CASE("Berkowitz charpoly matches cofactor expansion") {
  std::mt19937 rng(11);
  for (int n = 1; n <= 5; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto a = random_gaussian(n, rng);
      std::vector<std::vector<UPoly>> lam(n, std::vector<UPoly>(n));
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) lam[r][c] = r == c ? UPoly{-a(r, c), GaussianRational(1)} : UPoly{-a(r, c)};
      const UPoly oracle = laplace(lam);
      const auto p = charpoly(a);
      REQUIRE(p.size() == static_cast<std::size_t>(n + 1));
      for (int k = 0; k <= n; ++k) CHECK(p[k] == oracle[n - k]);
    }
  }
}

TEST_CASE("charpoly of symbolic matrices") {
  using P = MPoly<GaussianRational>;
  Mat<P> m(2, 2);
  m << P::variable("a"), P::variable("b"), P::variable("c"), P::variable("d");
  const auto p = charpoly(m);
  CHECK(p[0] == P(1));
  CHECK(p[1] == -(P::variable("a") + P::variable("d")));
  CHECK(p[2] == P::variable("a") * P::variable("d") - P::variable("b") * P::variable("c"));
}

TEST_CASE("exact solve, inverse and nullspace") {
  std::mt19937 rng(3);
  const auto a = random_gaussian(4, rng);
  Vec<GaussianRational> x(4);
  x << GaussianRational(1), GaussianRational(Rational(-1, 2)), GaussianRational(0, 2), GaussianRational(3);
  const Vec<GaussianRational> b = a * x;
  CHECK(solve_linear(a, b).x == x);
  const auto inv = inverse(a);
  CHECK(a * inv == Mat<GaussianRational>::Identity(4, 4));

  Mat<GaussianRational> s(2, 3);
  s << 1, 2, 3, 2, 4, 6;
  const auto ns = nullspace(s);
  CHECK(ns.cols() == 2);
  const Mat<GaussianRational> prod = s * ns;
  for (Eigen::Index r = 0; r < prod.rows(); ++r)
    for (Eigen::Index c = 0; c < prod.cols(); ++c) CHECK(prod(r, c).is_zero());
  const Mat<GaussianRational> st = s.transpose();
  const Vec<GaussianRational> ones = Vec<GaussianRational>::Constant(3, GaussianRational(1));
  CHECK_THROWS_AS(solve_linear(st, ones), SingularSystemError);
}

TEST_CASE("determinant of complex matrices") {
  std::mt19937 rng(5);
  std::normal_distribution<double> g;
  Mat<C> a(3, 3);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) a(r, c) = C(g(rng), g(rng));
  const C ref = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
                a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
  CHECK(std::abs(determinant(a) - ref) < 1e-12);
  CHECK((matrix_power(a, -2) * matrix_power(a, 2) - Mat<C>::Identity(3, 3)).norm() < 1e-10);
}

TEST_CASE("MPoly substitution and evaluation") {
  using P = MPoly<GaussianRational>;
  const P x = P::variable("x"), y = P::variable("y");
  const P p = x * x * y - P(2) * y + P(1);
  CHECK(p.substitute({{"y", GaussianRational(1)}}) == x * x - P(1));
  CHECK(p.evaluate({{"x", GaussianRational(2)}, {"y", GaussianRational(3)}}) == GaussianRational(7));
  CHECK_THROWS_AS(p.evaluate({{"x", GaussianRational(2)}}), DomainError);
  CHECK(p.total_degree() == 3);
  CHECK(p.variables() == std::set<std::string>{"x", "y"});
}
