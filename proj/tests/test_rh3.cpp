#include <random>

#include "doctest.h"
#include "stokeskit/errors.hpp"
#include "stokeskit/rh3.hpp"

using namespace stokeskit;
using G = GaussianRational;
using C = std::complex<double>;

namespace {

G gq(long p, long q = 1, long ip = 0, long iq = 1) { return G(make_rational(p, q), make_rational(ip, iq)); }

G random_gaussian(std::mt19937& rng, bool nonzero) {
  std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
  for (;;) {
    G g = gq(num(rng), den(rng), num(rng) / 3, den(rng));
    if (!nonzero || !g.is_zero()) return g;
  }
}

}  // namespace

TEST_CASE("top0 and topinf") {
  Mat<G> r(2, 2);
  r << gq(0), gq(-1), gq(1), gq(0);
  CHECK(top0(gq(0)) == r);
  CHECK(topinf(gq(1), gq(0), gq(0)) == Mat<G>::Identity(2, 2));
  std::mt19937 rng(1);
  for (int k = 0; k < 50; ++k) {
    const G e = random_gaussian(rng, false);
    CHECK(determinant(top0(e)) == gq(1));
    CHECK(determinant(topinf(random_gaussian(rng, true), random_gaussian(rng, false), random_gaussian(rng, false))) == gq(1));
  }
  CHECK_THROWS_AS(topinf(gq(0), gq(1), gq(1)), DomainError);
  // formal monodromy times Stokes factor
  Mat<G> gamma(2, 2), st(2, 2);
  gamma << gq(0), gq(-1), gq(1), gq(0);
  st << gq(1), gq(0), gq(5, 3), gq(1);
  CHECK(gamma * st == top0(gq(5, 3)));
}

TEST_CASE("exact square roots in Q(i)") {
  CHECK(exact_sqrt(gq(9, 4)) == gq(3, 2));
  CHECK(exact_sqrt(gq(-4)) == gq(0, 1, 2));
  CHECK(exact_sqrt(gq(0, 1, 2)) == gq(1, 1, 1));  // (1+i)² = 2i
  CHECK(exact_sqrt(gq(-3, 1, 4)) == gq(1, 1, 2));  // (1+2i)² = −3+4i
  CHECK(!exact_sqrt(gq(2)).has_value());
  CHECK(!exact_sqrt(gq(0, 1, 1)).has_value());
  std::mt19937 rng(2);
  for (int k = 0; k < 100; ++k) {
    const G x = random_gaussian(rng, false);
    const auto r = exact_sqrt(x * x);
    REQUIRE(r.has_value());
    CHECK(*r * *r == x * x);
  }
}

TEST_CASE("solve_link: trivial and impossible inputs") {
  // top_inf := L0·top0(e)⁻¹·L0⁻¹ makes L0 a valid link (top0⁻¹ itself has a zero (0,0) entry, so α would vanish)
  const G e = gq(3, 2);
  Mat<G> l0(2, 2);
  l0 << gq(1), gq(1), gq(0), gq(1);
  const Mat<G> ti = l0 * inverse(top0(e)) * inverse(l0);
  const G alpha = ti(0, 0), c2 = ti(0, 1) / alpha, c1 = ti(1, 0) * alpha;
  REQUIRE(topinf(alpha, c1, c2) == ti);
  PIIID7Data<G> d{e, alpha, c1, c2, l0};
  CHECK(relation_residual(d) == 0);
  PIIID7Data<G> wrong = d;
  wrong.link = Mat<G>::Identity(2, 2);
  CHECK(relation_residual(wrong) > 0);

  const auto s = solve_link(alpha, c1, c2);
  CHECK(s.data.e == e);
  CHECK(relation_residual(s.data) == 0);
  CHECK(s.solution_dimension == 2);

  CHECK_THROWS_AS(solve_link(gq(1), gq(0), gq(0)), DomainError);
  CHECK_THROWS_AS(solve_link(gq(1), gq(0), gq(0), std::optional<G>(gq(5))), DomainError);
  CHECK_THROWS_AS(solve_link(gq(2), gq(1), gq(1), std::optional<G>(gq(5))), DomainError);
  CHECK_THROWS_AS(solve_link(gq(0), gq(1), gq(1)), DomainError);
  // α = 1, c = 0 but top0(−2) is a Jordan block: still no link
  CHECK_THROWS_AS(solve_link(gq(1), gq(0), gq(0), std::optional<G>(gq(-2))), DomainError);
}

TEST_CASE("solve_link on random consistent data") {
  std::mt19937 rng(7);
  int normalized = 0;
  for (int k = 0; k < 100; ++k) {
    const G alpha = random_gaussian(rng, true), c1 = random_gaussian(rng, false), c2 = random_gaussian(rng, false);
    const auto s = solve_link(alpha, c1, c2);
    CHECK(s.data.e == -(alpha + (gq(1) + c1 * c2) / alpha));
    CHECK(relation_residual(s.data) == 0);
    CHECK(determinant(s.data.link) == s.det);
    if (s.det_normalized) {
      CHECK(s.det == gq(1));
      ++normalized;
    }
  }
  CHECK(normalized > 0);

  std::normal_distribution<double> g;
  for (int k = 0; k < 100; ++k) {
    const C alpha(g(rng), g(rng)), c1(g(rng), g(rng)), c2(g(rng), g(rng));
    const auto s = solve_link(alpha, c1, c2);
    CHECK(s.det_normalized);
    CHECK(std::abs(determinant(s.data.link) - 1.0) < 1e-12);
    CHECK(relation_residual(s.data) < 1e-12);
  }
}

TEST_CASE("relation residual detects perturbations") {
  const auto s = solve_link(C(1.3, 0.2), C(0.5, -1), C(2, 0.7));
  auto d = s.data;
  d.link(0, 0) += 0.1;
  CHECK(relation_residual(d) > 1e-3);
  d.link = Mat<C>::Zero(2, 2);
  CHECK_THROWS_AS(relation_residual(d), DomainError);
}

TEST_CASE("torus action") {
  const auto s = solve_link(gq(2, 3, 1, 2), gq(1, 5), gq(-3, 2, 1, 1));
  const auto same = torus_act(s.data, TorusElement<G>{gq(1), gq(1), gq(1)});
  CHECK(same.link == s.data.link);
  CHECK(same.c1 == s.data.c1);
  std::mt19937 rng(11);
  for (int k = 0; k < 30; ++k) {
    const TorusElement<G> t{random_gaussian(rng, true), random_gaussian(rng, true), random_gaussian(rng, true)};
    auto d = torus_act(s.data, t);
    CHECK(d.e == s.data.e);
    CHECK(d.alpha == s.data.alpha);
    CHECK(d.c1 * d.c2 == s.data.c1 * s.data.c2);
    CHECK(relation_residual(d) == 0);
    CHECK(determinant(d.link) == determinant(s.data.link) * t.l0 * t.l0 / (t.l1 * t.l2));
    // mechanical base change: top_inf conjugated by diag(λ₁,λ₂)
    Mat<G> dm = Mat<G>::Zero(2, 2);
    dm(0, 0) = t.l1;
    dm(1, 1) = t.l2;
    CHECK(topinf(d.alpha, d.c1, d.c2) == inverse(dm) * topinf(s.data.alpha, s.data.c1, s.data.c2) * dm);
    if (const auto f = normalize_link(d)) {
      CHECK(determinant(d.link) == gq(1));
      CHECK(relation_residual(d) == 0);
    }
  }
  CHECK_THROWS_AS(torus_act(s.data, TorusElement<G>{gq(0), gq(1), gq(1)}), DomainError);
}

TEST_CASE("cubic surface") {
  std::mt19937 rng(5);
  for (int k = 0; k < 20; ++k) {
    const G alpha = random_gaussian(rng, true), e = random_gaussian(rng, false);
    CHECK(cubic_residual(gq(0), gq(0), alpha, e) == gq(0));
    CHECK(cubic_residual(-alpha, gq(0), alpha, e) == gq(0));
    CHECK(cubic_residual(gq(0), gq(-1), alpha, e) == gq(0));
  }
  CHECK(cubic_residual(gq(1), gq(1), gq(1), gq(1)) == gq(5));
}
