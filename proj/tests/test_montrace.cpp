#include <Eigen/LU>
#include <algorithm>
#include <numbers>
#include <random>

#include "doctest.h"
#include "stokeskit/errors.hpp"
#include "stokeskit/families.hpp"
#include "stokeskit/montrace.hpp"
#include "stokeskit/parser.hpp"

using namespace stokeskit;
using C = std::complex<double>;

namespace {

constexpr double kTol = 1e-11;
const double kPi = std::numbers::pi;

GaussianRational gr(long p, long q = 1) { return GaussianRational(make_rational(p, q)); }

MatrixSystem constant_system(const Mat<GaussianRational>& b) {
  Mat<RationalFunc> m(b.rows(), b.cols());
  for (Eigen::Index r = 0; r < b.rows(); ++r)
    for (Eigen::Index c = 0; c < b.cols(); ++c) m(r, c) = RationalFunc(b(r, c));
  return MatrixSystem(m);
}

MatrixSystem diagonal(const std::vector<GaussianRational>& mu) {
  Mat<GaussianRational> b = Mat<GaussianRational>::Constant(mu.size(), mu.size(), GaussianRational(0));
  for (std::size_t k = 0; k < mu.size(); ++k) b(k, k) = mu[k];
  return constant_system(b);
}

// Multiset distance by greedy matching.
double multiset_distance(std::vector<C> a, std::vector<C> b) {
  double worst = 0;
  for (const auto& x : a) {
    auto it = std::min_element(b.begin(), b.end(), [&](C p, C q) { return std::abs(p - x) < std::abs(q - x); });
    worst = std::max(worst, std::abs(*it - x));
    b.erase(it);
  }
  return worst;
}

}  // namespace

TEST_CASE("constant diagonal system along a line") {
  const auto sys = diagonal({gr(1, 3), gr(-2, 5), GaussianRational(Rational(1, 2), Rational(1))});
  Path p;
  p.line({1, 0}, {2, 1});
  const auto r = transport(sys, p, kTol);
  const std::vector<C> mu{1.0 / 3, -0.4, C(0.5, 1)};
  for (int k = 0; k < 3; ++k) CHECK(std::abs(r.matrix(k, k) - std::pow(C(2, 1), mu[k])) < 1e-9);
  CHECK(std::abs(r.matrix(0, 1)) < 1e-14);
  CHECK(r.error_estimate < 1e-9);
  CHECK(r.step_count > 0);
}

TEST_CASE("half turn of z^(1/2)") {
  const auto sys = diagonal({gr(1, 2)});
  Path p;
  p.arc({0, 0}, 1, 0, 0.5);
  CHECK(std::abs(transport(sys, p, kTol).matrix(0, 0) - C(0, 1)) < 1e-9);
  CHECK(std::abs(p.end() - C(-1, 0)) < 1e-15);
}

TEST_CASE("loop monodromy of z^mu and of the log system") {
  const auto sys = diagonal({gr(1, 3), gr(3, 4)});
  const auto m = loop_monodromy(sys, 1.0, kTol).matrix;
  CHECK(std::abs(m(0, 0) - std::exp(C(0, 2 * kPi / 3))) < 1e-9);
  CHECK(std::abs(m(1, 1) - std::exp(C(0, 1.5 * kPi))) < 1e-9);

  Mat<GaussianRational> nil = Mat<GaussianRational>::Constant(2, 2, GaussianRational(0));
  nil(0, 1) = GaussianRational(1);
  const auto l = loop_monodromy(constant_system(nil), 0.7, kTol).matrix;
  CHECK(std::abs(l(0, 0) - 1.0) < 1e-9);
  CHECK(std::abs(l(0, 1) - C(0, 2 * kPi)) < 1e-9);
  CHECK(std::abs(l(1, 0)) < 1e-9);
  CHECK(std::abs(l(1, 1) - 1.0) < 1e-9);
}

TEST_CASE("ramified family monodromy eigenvalues are e^{2 pi i a_j}") {
  const std::vector<GaussianRational> a{gr(-1, 3), gr(0), gr(1, 3)};
  const auto sys = ramified_family(3, a);
  const auto m = loop_monodromy(sys, 1.0, kTol);
  const auto s = spectrum(m.matrix);
  std::vector<C> expected;
  for (const auto& v : a) expected.push_back(std::exp(C(0, 2 * kPi * v.real().get_d())));
  CHECK(multiset_distance(s.eigenvalues, expected) < 1e-8);
}

TEST_CASE("monodromy properties on the ramified family") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  for (int trial = 0; trial < 3; ++trial) {
    const double a0 = u(rng), a1 = u(rng);
    const std::vector<GaussianRational> a{GaussianRational(Rational(a0)), GaussianRational(Rational(a1)),
                                          GaussianRational(Rational(-a0 - a1))};
    const auto sys = ramified_family(3, a);
    const auto m = loop_monodromy(sys, 1.0, kTol).matrix;
    // det = e^{2πi tr B(0)} = 1
    CHECK(std::abs(m.determinant() - 1.0) < 10 * kTol * 100);
    const auto back = loop_monodromy(sys, 1.0, kTol, false).matrix;
    CHECK((m * back - MatC::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-8);
    const auto other = loop_monodromy(sys, 2.5, kTol).matrix;
    // the basis changes with the base point; the conjugacy class does not
    CHECK(multiset_distance(spectrum(m).eigenvalues, spectrum(other).eigenvalues) < 1e-7);
  }
}

TEST_CASE("transport composes along concatenated paths") {
  const auto sys = to_system(parse_operator("delta^2 - z*delta + 1/3"));
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(0.5, 2.0), th(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    const C z1 = std::polar(u(rng), 2 * kPi * th(rng));
    Path p1, p2;
    p1.line({1, 0.5}, z1);
    p2.arc({0, 0}, std::abs(z1), std::arg(z1) / (2 * kPi), std::arg(z1) / (2 * kPi) + 0.3);
    Path both = p1;
    both.then(p2);
    const auto t1 = transport(sys, p1, kTol).matrix;
    const auto t2 = transport(sys, p2, kTol).matrix;
    const auto t12 = transport(sys, both, kTol).matrix;
    CHECK((t12 - t2 * t1).cwiseAbs().maxCoeff() < 2e-9);
  }
}

TEST_CASE("reversed path inverts the transport") {
  const auto sys = to_system(parse_operator("delta^3 - z"));
  Path p;
  p.line({0.5, 0}, {1, 1}).arc({0, 0}, std::sqrt(2.0), 0.125, 0.6);
  const auto t = transport(sys, p, kTol).matrix;
  const auto back = transport(sys, p.reversed(), kTol).matrix;
  CHECK((t * back - MatC::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("long double transport") {
  const auto sys = diagonal({gr(1, 3)});
  const auto m = loop_monodromy<long double>(sys, 1.0, 1e-15);
  const std::complex<long double> expected = std::exp(std::complex<long double>(0, 2 * std::numbers::pi_v<long double> / 3));
  CHECK(static_cast<double>(std::abs(m.matrix(0, 0) - expected)) < 1e-13);
}

TEST_CASE("clearance, tolerance and step guards") {
  const auto sys = to_system(parse_operator("(z-2)*delta^2 + 1"));
  REQUIRE(sys.nonzero_poles().size() == 1);
  CHECK(default_radius(sys) == doctest::Approx(1.0));
  CHECK(default_radius(to_system(parse_operator("delta^2 - z"))) == 1.0);
  CHECK_THROWS_AS(loop_monodromy(sys, 2.0, kTol), DomainError);
  Path through_zero;
  through_zero.line({-1, 0}, {1, 0});
  CHECK_THROWS_AS(transport(sys, through_zero, kTol), DomainError);
  CHECK_THROWS_AS(loop_monodromy(sys, 1.0, 1e-20), DomainError);
  TransportOptions tight;
  tight.max_steps = 3;
  CHECK_THROWS_AS(loop_monodromy(to_system(parse_operator("delta^2 - 50*z")), 3.0, 1e-12, true, tight),
                  NumericalError);
}

TEST_CASE("arc clearance respects the angular range") {
  Path p;
  p.arc({0, 0}, 1, 0, 0.25);
  CHECK(p.clearance({C(-1, 0)}) == doctest::Approx(std::sqrt(2.0)));
  CHECK(p.clearance({C(0.5, 0.5)}) == doctest::Approx(1 - std::sqrt(0.5)));
}

TEST_CASE("spectrum") {
  const auto id = spectrum(MatC::Identity(3, 3));
  CHECK(id.charpoly == std::vector<C>{1, -3, 3, -1});
  MatC comp = MatC::Zero(3, 3);
  // companion of T^3 − 2T^2 + 0T + 5
  comp(0, 1) = 1;
  comp(1, 2) = 1;
  comp(2, 0) = -5;
  comp(2, 1) = 0;
  comp(2, 2) = 2;
  const auto s = spectrum(comp);
  REQUIRE(s.charpoly.size() == 4);
  CHECK(std::abs(s.charpoly[1] - C(-2)) < 1e-14);
  CHECK(std::abs(s.charpoly[2]) < 1e-14);
  CHECK(std::abs(s.charpoly[3] - C(5)) < 1e-14);
  for (double r : s.residuals) CHECK(r < 1e-12);

  std::mt19937 rng(9);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    MatC m(4, 4);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) m(r, c) = C(g(rng), g(rng));
    const auto sp = spectrum(m);
    C prod = 1;
    for (const auto& l : sp.eigenvalues) prod *= l;
    CHECK(std::abs(prod - sp.charpoly[4]) < 1e-12 * std::max(1.0, std::abs(prod)));
  }
}
