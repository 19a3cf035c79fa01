#include <random>

#include "doctest.h"
#include "stokeskit/errors.hpp"
#include "stokeskit/families.hpp"
#include "stokeskit/parser.hpp"
#include "stokeskit/system.hpp"

using namespace stokeskit;

namespace {

const DiffOperator D = DiffOperator::delta();
const DiffOperator Z = DiffOperator::z();

GaussianRational gr(long p, long q = 1) { return GaussianRational(make_rational(p, q)); }

RationalFunc random_coeff(std::mt19937& rng, bool allow_denominator) {
  std::uniform_int_distribution<int> d(-3, 3), deg(0, 2), q(1, 4);
  Poly num;
  const int nd = deg(rng);
  for (int e = 0; e <= nd; ++e) num.set(e, GaussianRational(make_rational(d(rng), q(rng)), make_rational(d(rng), q(rng))));
  // small denominator pool keeps triple products tractable
  Poly den(1);
  std::uniform_int_distribution<int> pick(0, 5);
  const int k = pick(rng);
  if (allow_denominator && k == 0) den = Poly::z();
  if (allow_denominator && k == 1) den = Poly::z() - Poly(1);
  return RationalFunc(num, den);
}

DiffOperator random_operator(std::mt19937& rng, bool allow_denominator = true) {
  std::uniform_int_distribution<int> deg(0, 4);
  std::vector<RationalFunc> c;
  const int n = deg(rng);
  for (int i = 0; i <= n; ++i) c.push_back(random_coeff(rng, allow_denominator));
  if (c.back().is_zero()) c.back() = RationalFunc(1);
  return DiffOperator(c);
}

}  // namespace

TEST_CASE("delta times z") {
  CHECK(D * Z == Z * D + Z);
  CHECK(op_multiply(DiffOperator(1), D * D - Z) == D * D - Z);
}

TEST_CASE("(delta - z)(delta + z) expands to delta^2 + z - z^2") {
  CHECK((D - Z) * (D + Z) == D * D + Z - Z * Z);
}

TEST_CASE("parse_operator literal operators") {
  const auto op = parse_operator("delta^3 - z");
  REQUIRE(op.degree() == 3);
  CHECK(op.coeff(3) == RationalFunc(1));
  CHECK(op.coeff(0) == -RationalFunc::z());
  CHECK(op.coeff(1).is_zero());
  CHECK(parse_operator("(2+3i)*z^2*delta") == DiffOperator(RationalFunc(GaussianRational(2, 3))) * Z * Z * D);
  CHECK(parse_operator("1/z + delta") == D + DiffOperator(RationalFunc(Poly(1), Poly::z())));
  CHECK(parse_operator("z^(-2)") == DiffOperator(RationalFunc(Poly(1), Poly::z() * Poly::z())));
}

TEST_CASE("parse_operator builds 1D3 with bindings") {
  const Bindings b{{"mu", gr(1, 3)}, {"nu1", gr(1, 5)}, {"nu2", gr(2, 7)}, {"nu3", gr(-1, 2)}};
  const auto parsed = parse_operator("z*(delta+mu) - (delta+nu1-1)*(delta+nu2-1)*(delta+nu3-1)", b);
  CHECK(parsed == build_pDq(1, 3, {gr(1, 3)}, {gr(1, 5), gr(2, 7), gr(-1, 2)}));
}

TEST_CASE("parse errors carry positions") {
  try {
    parse_operator("delta^2 - ");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 10);
    CHECK(std::string(e.what()).find("end of input") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_operator("delta + mu"), DomainError);
  CHECK_THROWS_AS(parse_operator("1/(z-z)"), DomainError);
  CHECK_THROWS_AS(parse_operator("1/delta"), DomainError);
  CHECK_THROWS_AS(parse_operator("delta^(-1)"), DomainError);
  CHECK_THROWS_AS(parse_operator("delta $ z"), ParseError);
}

TEST_CASE("parse of print is the identity on canonical forms") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const auto op = random_operator(rng);
    CHECK(parse_operator(op.to_string()) == op);
  }
}

TEST_CASE("rational function arithmetic agrees with full reduction") {
  std::mt19937 rng(31);
  const Poly z = Poly::z();
  const std::vector<Poly> dens{Poly(1), z, z * z, z - Poly(1), (z - Poly(1)) * (z - Poly(1)) * z, z * z + Poly(2),
                               (z + Poly(3)) * (z * z + Poly(2))};
  std::uniform_int_distribution<int> d(-3, 3), pick(0, static_cast<int>(dens.size()) - 1);
  auto random_func = [&] {
    Poly num;
    for (int e = 0; e <= 3; ++e) num.set(e, gr(d(rng), 1 + (d(rng) + 3) % 3));
    // a shared factor on purpose
    const Poly den = dens[pick(rng)];
    return std::pair{num * den, den * dens[pick(rng)]};
  };
  for (int trial = 0; trial < 200; ++trial) {
    const auto [n1, d1] = random_func();
    const auto [n2, d2] = random_func();
    const RationalFunc f(n1, d1), g(n2, d2);
    CHECK(f + g == RationalFunc(n1 * d2 + n2 * d1, d1 * d2));
    CHECK(f * g == RationalFunc(n1 * n2, d1 * d2));
    CHECK(f.delta() == RationalFunc(n1.delta() * d1 - n1 * d1.delta(), d1 * d1));
    CHECK(f - f == RationalFunc());
    CHECK((f * g).denominator().leading_coeff() == gr(1));
  }
}

TEST_CASE("operator product is associative and distributive") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = random_operator(rng), b = random_operator(rng), c = random_operator(rng);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b).degree() == a.degree() + b.degree());
  }
}

TEST_CASE("operator application agrees with the product") {
  std::mt19937 rng(29);
  const RationalFunc f(Poly::z() * Poly::z() + Poly(3), Poly::z() - Poly(2));
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = random_operator(rng), b = random_operator(rng);
    CHECK((a * b).apply(f) == a.apply(b.apply(f)));
  }
}

TEST_CASE("companion systems") {
  const auto s = to_system(D * D * D - Z);
  REQUIRE(s.dimension() == 3);
  const auto& b = s.matrix();
  CHECK(b(0, 1) == RationalFunc(1));
  CHECK(b(1, 2) == RationalFunc(1));
  CHECK(b(2, 0) == RationalFunc::z());
  CHECK(b(2, 1).is_zero());
  CHECK(b(0, 0).is_zero());
  CHECK(s.nonzero_poles().empty());
  CHECK(s.singular_at_infinity());

  const auto q = to_system(D - Z * Z);
  CHECK(q.matrix()(0, 0) == RationalFunc::z() * RationalFunc::z());

  const auto r = to_system(Z * D * D - DiffOperator(1));
  CHECK(r.matrix()(1, 0) == RationalFunc(Poly(1), Poly::z()));
  CHECK(r.matrix()(0, 1) == RationalFunc(1));
  CHECK(r.singular_at_zero());
  CHECK(r.singular_at_infinity());
  CHECK(r.nonzero_poles().empty());

  CHECK_THROWS_AS(to_system(DiffOperator(Z)), DomainError);
}

TEST_CASE("companion vector of an exact monomial solution solves the system") {
  // (δ − 2)(δ + 1) kills z^2
  const auto op = (D - DiffOperator(2)) * (D + DiffOperator(1));
  const RationalFunc y = RationalFunc::z() * RationalFunc::z();
  REQUIRE(op.apply(y).is_zero());
  const auto s = to_system(op);
  const RationalFunc y0 = y, y1 = y.delta();
  CHECK(y0.delta() == s.matrix()(0, 0) * y0 + s.matrix()(0, 1) * y1);
  CHECK(y1.delta() == s.matrix()(1, 0) * y0 + s.matrix()(1, 1) * y1);
}

TEST_CASE("nonzero poles") {
  const auto s = to_system((Z - DiffOperator(2)) * D * D + DiffOperator(1));
  REQUIRE(s.nonzero_poles().size() == 1);
  CHECK(std::abs(s.nonzero_poles()[0] - std::complex<double>(2, 0)) < 1e-12);
}

TEST_CASE("build_pDq") {
  const GaussianRational mu = gr(1, 3), n1 = gr(1, 5), n2 = gr(2, 7), n3 = gr(-1, 2);
  const auto op = build_pDq(1, 3, {mu}, {n1, n2, n3});
  auto shift = [&](const GaussianRational& c) { return D + DiffOperator(RationalFunc(c)); };
  CHECK(op == Z * shift(mu) - shift(n1 - 1) * shift(n2 - 1) * shift(n3 - 1));
  const auto op12 = build_pDq(1, 2, {mu}, {n1, n2});
  CHECK(op12 == -(Z * shift(mu)) - shift(n1 - 1) * shift(n2 - 1));
  CHECK_THROWS_AS(build_pDq(2, 3, {gr(0), gr(1)}, {n1, n2, n3}), DomainError);
  CHECK_THROWS_AS(build_pDq(3, 3, {gr(0), gr(1, 2), gr(1, 3)}, {n1, n2, n3}), DomainError);
  CHECK_THROWS_AS(build_pDq(1, 3, {mu}, {n1, n2}), DomainError);
}

TEST_CASE("ramified family") {
  const auto s = ramified_family(3, {gr(-1, 3), gr(0), gr(1, 3)});
  const auto& b = s.matrix();
  CHECK(b(0, 0) == RationalFunc(gr(-1, 3)));
  CHECK(b(2, 2) == RationalFunc(gr(1, 3)));
  CHECK(b(1, 0) == RationalFunc(1));
  CHECK(b(2, 1) == RationalFunc(1));
  CHECK(b(0, 2) == RationalFunc::z());
  CHECK(b(0, 1).is_zero());
  CHECK_THROWS_WITH_AS(ramified_family(3, {gr(1), gr(1), gr(1)}), "sum of a must be 0", DomainError);
  CHECK_THROWS_AS(ramified_family(1, {gr(0)}), DomainError);
  const auto t = ramified_family(2, {gr(0), gr(0)});
  CHECK(t.matrix()(0, 1) == RationalFunc::z());
  CHECK(t.matrix()(1, 0) == RationalFunc(1));
}

TEST_CASE("unramified family") {
  Mat<GaussianRational> t = Mat<GaussianRational>::Constant(2, 2, GaussianRational(0));
  const auto s = unramified_family({gr(0), gr(1)}, t);
  CHECK(s.matrix()(1, 1) == RationalFunc::z());
  CHECK(s.matrix()(0, 0).is_zero());
  t(0, 1) = gr(5, 2);
  CHECK(unramified_family({gr(0), gr(1)}, t).matrix()(0, 1) == RationalFunc(gr(5, 2)));
  CHECK_THROWS_AS(unramified_family({gr(1), gr(1)}, Mat<GaussianRational>::Constant(2, 2, GaussianRational(0))),
                  DomainError);
  t(1, 1) = gr(1);
  CHECK_THROWS_AS(unramified_family({gr(0), gr(1)}, t), DomainError);
}
