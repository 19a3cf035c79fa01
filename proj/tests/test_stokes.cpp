#include <cmath>
#include <random>

#include "doctest.h"
#include "stokeskit/errors.hpp"
#include "stokeskit/families.hpp"
#include "stokeskit/parser.hpp"
#include "stokeskit/stokes.hpp"

using namespace stokeskit;
using C = std::complex<double>;
using SPoly = MPoly<Cyclotomic>;

namespace {

GaussianRational gr(long p, long q = 1) { return GaussianRational(make_rational(p, q)); }
Cyclotomic cy(long p, long q = 1) { return Cyclotomic(GaussianRational(make_rational(p, q))); }
SPoly var(const std::string& name) { return SPoly::variable(name); }

std::vector<GaussianRational> zeros(int n) { return std::vector<GaussianRational>(n, gr(0)); }

long long binom(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

const std::vector<GaussianRational> kMu{gr(1, 3)};
const std::vector<GaussianRational> kNu{gr(1, 5), gr(2, 7), gr(1, 2)};

}  // namespace

TEST_CASE("identity product, ramified n = 3") {
  const auto f = formal_ramified<Cyclotomic>(3, cy(1));
  const auto m = identity_product(f, unit_templates(f));
  CHECK(m(0, 0) == SPoly());
  CHECK(m(0, 1) == var("x21"));
  CHECK(m(0, 2) == SPoly(cy(1)));
  CHECK(m(1, 0) == SPoly(cy(1)));
  CHECK(m(1, 1) == var("x01"));
  CHECK(m(1, 2) == SPoly());
  CHECK(m(2, 0) == SPoly());
  CHECK(m(2, 1) == SPoly(cy(1)));
  CHECK(m(2, 2) == SPoly());
  const auto p = symbolic_char_poly(m);
  REQUIRE(p.size() == 4);
  CHECK(p[1] == -var("x01"));
  CHECK(p[2] == -var("x21"));
  CHECK(p[3] == SPoly(cy(-1)));
}

TEST_CASE("identity product, 1D3") {
  const auto f = formal_pDq<Cyclotomic>(1, 3, kMu, kNu);
  const Cyclotomic d1 = f.gamma(0, 0), d2 = f.gamma(1, 2);
  const auto m = identity_product(f, unit_templates(f));
  CHECK(m(0, 0) == SPoly(d1));
  CHECK(m(0, 1) == SPoly(d1) * var("x10"));
  CHECK(m(0, 2) == SPoly());
  CHECK(m(1, 0) == SPoly(d2) * var("x02"));
  CHECK(m(1, 1) == SPoly(d2) * var("x12"));
  CHECK(m(1, 2) == SPoly(d2));
  CHECK(m(2, 0) == SPoly());
  CHECK(m(2, 1) == SPoly(cy(1)));
  CHECK(m(2, 2) == SPoly());

  const auto p = symbolic_char_poly(m);
  const SPoly D1(d1), D2(d2);
  CHECK(p[1] == -(D1 + D2 * var("x12")));
  CHECK(p[2] == -(D2 - D1 * D2 * var("x12") + D1 * D2 * var("x10") * var("x02")));
  CHECK(p[3] == D1 * D2);
  // all unknowns 0 → charpoly(γ)
  const std::map<std::string, Cyclotomic> none{{"x10", cy(0)}, {"x02", cy(0)}, {"x12", cy(0)}};
  const auto g = charpoly(f.gamma);
  for (int k = 0; k < 4; ++k) CHECK(p[k].evaluate(none) == g[k]);
  CHECK(g[1] == -d1);
  CHECK(g[2] == -d2);
  CHECK(g[3] == d1 * d2);
}

TEST_CASE("identity product errors and the empty case") {
  const auto f = formal_ramified<Cyclotomic>(3, cy(1));
  auto ts = unit_templates(f);
  CHECK_THROWS_AS(identity_product(f, {ts[0], ts[0]}), DomainError);
  CHECK_THROWS_AS(identity_product(f, {gamma_shift(f, ts[0], 1)}), DomainError);
  // reverse input order is accepted
  CHECK(identity_product(f, {ts[1], ts[0]}) == identity_product(f, ts));
  const auto u = formal_unramified<Cyclotomic>({cy(1)});
  const auto m = identity_product(u, {});
  CHECK(m(0, 0) == SPoly(cy(1)));
}

TEST_CASE("solve_ramified, n = 3 special cases and closed forms") {
  {
    const auto s = solve_ramified<Cyclotomic>(3, std::vector<GaussianRational>{gr(-1, 3), gr(0), gr(1, 3)});
    CHECK(s.values.at("x01") == cy(0));
    CHECK(s.values.at("x21") == cy(0));
    CHECK(s.residual == 0);
  }
  {
    const auto s = solve_ramified<Cyclotomic>(3, zeros(3));
    CHECK(s.values.at("x01") == cy(3));
    CHECK(s.values.at("x21") == cy(-3));
  }
  // x01 = Σe_j; x21 = −Σ_{i<j} e_i e_j for the closure-1 product (charpoly λ³ − x01λ² − x21λ − 1)
  const std::vector<GaussianRational> a{gr(1, 7), gr(2, 5), gr(-19, 35)};
  const auto s = solve_ramified<Cyclotomic>(3, a);
  std::vector<Cyclotomic> e;
  for (const auto& v : a) e.push_back(Cyclotomic::exp_2pi_i(v));
  CHECK(s.values.at("x01") == e[0] + e[1] + e[2]);
  CHECK(s.values.at("x21") == -(e[0] * e[1] + e[0] * e[2] + e[1] * e[2]));
  CHECK_THROWS_AS(solve_ramified<Cyclotomic>(3, std::vector<GaussianRational>{gr(1), gr(0), gr(0)}), DomainError);
}

TEST_CASE("solve_ramified, n = 5 trivial and binomial cases") {
  std::vector<GaussianRational> a;
  for (int i = 0; i < 5; ++i) a.push_back(gr(i, 5) - gr(2, 5));
  const auto s = solve_ramified<Cyclotomic>(5, a);
  for (const auto& [k, v] : s.values) CHECK(v == cy(0));
  for (const auto& fct : s.factors) CHECK(fct.matrix == Mat<Cyclotomic>::Identity(5, 5));
}

TEST_CASE("delta^n - z: entries are signed binomials, charpoly (lambda-1)^n") {
  for (int n = 2; n <= 6; ++n) {
    CAPTURE(n);
    const auto s = solve_ramified<Cyclotomic>(n, zeros(n));
    CHECK(static_cast<int>(s.values.size()) == n - 1);
    for (const auto& [name, v] : s.values) {
      CAPTURE(name);
      REQUIRE(v.is_rational());
      const Rational r = abs(v.rational_value());
      bool is_binomial = false;
      for (int k = 1; k < n; ++k) is_binomial = is_binomial || r == Rational(static_cast<long>(binom(n, k)));
      CHECK(is_binomial);
    }
    const auto f = formal_ramified<Cyclotomic>(n, ramified_family_closure<Cyclotomic>(n));
    std::vector<Cyclotomic> ones(n, cy(1));
    CHECK(charpoly(s.product(f)) == poly_from_roots(ones));
  }
  const auto s4 = solve_ramified<Cyclotomic>(4, zeros(4));
  CHECK(s4.values.at("x01") == cy(4));
  CHECK(s4.values.at("x02") == cy(-6));
  CHECK(s4.values.at("x32") == cy(-4));
}

TEST_CASE("solve_ramified with complex a matches the exact solver") {
  const std::vector<GaussianRational> a{gr(1, 7), gr(2, 5), gr(-19, 35)};
  const auto exact = solve_ramified<Cyclotomic>(3, a);
  std::vector<C> ac;
  for (const auto& v : a) ac.push_back(v.to_complex());
  const auto num = solve_ramified<C>(3, ac);
  for (const auto& [k, v] : exact.values) CHECK(std::abs(num.values.at(k) - v.to_complex()) < 1e-12);
  CHECK(num.residual < 1e-12);
  const auto irr = solve_ramified<C>(3, std::vector<C>{std::sqrt(2.0) / 10, -0.3, 0.3 - std::sqrt(2.0) / 10});
  CHECK(irr.residual < 1e-12);
}

TEST_CASE("cross_check against loop monodromy") {
  const auto f = formal_ramified<Cyclotomic>(3, cy(1));
  for (const auto& a : {std::vector<GaussianRational>{gr(-1, 3), gr(0), gr(1, 3)}, zeros(3)}) {
    const auto s = solve_ramified<Cyclotomic>(3, a);
    const auto r = cross_check(ramified_family(3, a), f, s, 1e-11);
    CHECK(r.deviation < 1e-8);
  }
  // detector sanity
  auto s = solve_ramified<Cyclotomic>(3, zeros(3));
  s.factors[0].matrix(1, 0) = s.factors[0].matrix(1, 0) + cy(1, 10);
  CHECK(cross_check(ramified_family(3, zeros(3)), f, s, 1e-11).deviation > 0.01);

  for (int n = 2; n <= 6; ++n) {
    CAPTURE(n);
    const auto sn = solve_ramified<Cyclotomic>(n, zeros(n));
    const auto fn = formal_ramified<Cyclotomic>(n, ramified_family_closure<Cyclotomic>(n));
    CHECK(cross_check(ramified_family(n, zeros(n)), fn, sn, 1e-12, 0.05).deviation < 1e-8);
  }
}

TEST_CASE("solve_mixed on 1D3 with a numerical target") {
  const auto f = formal_pDq<C>(1, 3, kMu, kNu);
  const auto sys = to_system(build_pDq(1, 3, kMu, kNu));
  const auto mono = loop_monodromy(sys, default_radius(sys), 1e-12);
  const auto target = numeric_target<C>(mono.matrix);
  const auto s = solve_mixed(f, target, {"x10"});
  CHECK(s.residual < 1e-8);
  CHECK(s.values.at("x10") == C(1));
  CHECK(!s.reducible);
  CHECK(std::abs(s.values.at("x02")) > 1e-3);
  CHECK(cross_check(sys, f, s, 1e-11).deviation < 1e-8);

  // the torus action moves x and y but not their product or z
  const auto t = solve_mixed(f, target, {"x02"});
  CHECK(std::abs(t.values.at("x10") * t.values.at("x02") - s.values.at("x10") * s.values.at("x02")) < 1e-9);
  CHECK(std::abs(t.values.at("x12") - s.values.at("x12")) < 1e-9);

  CHECK_THROWS_AS(solve_mixed(f, target, {}), DomainError);
  CHECK_THROWS_AS(solve_mixed(f, target, {"x12"}), DomainError);
  CHECK_THROWS_AS(solve_mixed(f, target, {"nope"}), DomainError);
}

TEST_CASE("solve_mixed: trivial target is flagged reducible") {
  const auto f = formal_pDq<Cyclotomic>(1, 3, kMu, kNu);
  const auto s = solve_mixed(f, charpoly(f.gamma), {"x10"});
  CHECK(s.reducible);
  CHECK(!s.note.empty());
  CHECK(s.values.at("x02") == cy(0));
  CHECK(s.values.at("x12") == cy(0));
  CHECK(s.residual == 0);
}

TEST_CASE("solve_mixed: exact target with x10 x02 = 0 is reducible, nonzero z") {
  const auto f = formal_pDq<Cyclotomic>(1, 3, kMu, kNu);
  const std::map<std::string, Cyclotomic> vals{{"x10", cy(1)}, {"x02", cy(0)}, {"x12", cy(2, 3)}};
  const auto& full = vals;
  Mat<Cyclotomic> prod = f.gamma;
  const auto ts = unit_templates(f);
  for (auto it = ts.rbegin(); it != ts.rend(); ++it) prod = prod * it->instantiate(full);
  const auto s = solve_mixed(f, charpoly(prod), {"x10"});
  CHECK(s.reducible);
  CHECK(s.values.at("x12") == cy(2, 3));
}

TEST_CASE("solve_mixed on a larger V0 + W shape") {
  // m = 2, n = 3
  const std::vector<Cyclotomic> v0{Cyclotomic::exp_2pi_i(make_rational(1, 5)), Cyclotomic::exp_2pi_i(make_rational(-2, 7))};
  const auto f = formal_mixed<Cyclotomic>(v0, 3, cy(1), -1);
  CHECK(irregularity(f) == Rational(2 * 2 + 3 - 1));
  // random exact Stokes data → target → solve recovers products and z
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> u(-5, 5);
  std::map<std::string, Cyclotomic> vals;
  const auto ts = unit_templates(f);
  for (const auto& t : ts)
    for (const auto& name : t.unknowns()) vals[name] = cy(u(rng) == 0 ? 1 : u(rng), 1 + (u(rng) + 5) % 3);
  std::vector<std::string> norm;
  for (const auto& t : ts)
    for (const auto& e : t.entries)
      if (e.col < 2 && std::find(norm.begin(), norm.end(), e.name) == norm.end() &&
          std::none_of(norm.begin(), norm.end(), [&](const std::string& s) { return s.find(f.label(e.col)) != std::string::npos; }))
        norm.push_back(e.name);
  REQUIRE(norm.size() == 2);
  for (const auto& name : norm) vals[name] = cy(1);
  Mat<Cyclotomic> prod = f.gamma;
  for (auto it = ts.rbegin(); it != ts.rend(); ++it) prod = prod * it->instantiate(vals);
  const auto s = solve_mixed(f, charpoly(prod), norm);
  CHECK(s.residual == 0);
  for (const auto& [k, v] : vals) {
    CAPTURE(k);
    CHECK(s.values.at(k) == v);
  }
}

TEST_CASE("wrong shapes for solve_mixed") {
  const auto r = formal_ramified<Cyclotomic>(3, cy(1));
  CHECK_THROWS_AS(solve_mixed(r, charpoly(r.gamma), {}), DomainError);
  const std::vector<Cyclotomic> same{cy(1), cy(1)};
  CHECK_THROWS_AS(solve_mixed(formal_mixed<Cyclotomic>(same, 2, cy(-1)), std::vector<Cyclotomic>(5, cy(1)), {"a", "b"}),
                  DomainError);
}

TEST_CASE("gamma shift of solved factors matches the shifted templates") {
  const auto s = solve_ramified<Cyclotomic>(4, zeros(4));
  const auto f = formal_ramified<Cyclotomic>(4, ramified_family_closure<Cyclotomic>(4));
  for (const auto& fct : s.factors) {
    const auto shifted = gamma_shift(f, fct.shape, 1);
    CHECK(gamma_shift(f, fct.matrix, 1) == shifted.instantiate(s.values));
  }
}
