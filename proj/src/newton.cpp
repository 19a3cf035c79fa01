#include "stokeskit/newton.hpp"

#include <algorithm>

#include "stokeskit/errors.hpp"

namespace stokeskit {

int NewtonPolygon::degree() const {
  int d = 0;
  for (const auto& s : slopes) d += s.multiplicity;
  return d;
}

NewtonPolygon newton_polygon(const DiffOperator& op) {
  if (op.degree() < 1) throw DomainError("Newton polygon needs an operator of degree >= 1");
  NewtonPolygon out;

  // Least common multiple of the denominators.
  Poly lcm(1);
  for (const auto& c : op.coeffs()) {
    if (c.is_zero()) continue;
    const Poly& d = c.denominator();
    const Poly g = poly_gcd(lcm, d);
    lcm = poly_divmod(lcm * d, g).first;
  }
  out.clearing_factor = lcm;

  for (int i = 0; i <= op.degree(); ++i) {
    const RationalFunc c = op.coeff(i);
    if (c.is_zero()) continue;
    const RationalFunc cleared = c * RationalFunc(lcm);
    out.points.emplace_back(i, -cleared.numerator().degree());
  }

  // The boundary is flat up to the last point of minimal height, then follows the
  // lower convex hull of the remaining points.
  const int min_y = std::min_element(out.points.begin(), out.points.end(),
                                     [](const auto& a, const auto& b) { return a.second < b.second; })
                        ->second;
  std::size_t start = 0;
  for (std::size_t k = 0; k < out.points.size(); ++k)
    if (out.points[k].second == min_y) start = k;
  if (out.points[start].first > 0) out.slopes.push_back({Rational(0), out.points[start].first});

  std::vector<std::pair<int, int>> hull;
  for (std::size_t k = start; k < out.points.size(); ++k) {
    const auto p = out.points[k];
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      // Drop b if it is not strictly below the chord a→p.
      const long cross = static_cast<long>(b.first - a.first) * (p.second - a.second) -
                         static_cast<long>(b.second - a.second) * (p.first - a.first);
      if (cross <= 0) {
        hull.pop_back();
      } else {
        break;
      }
    }
    hull.push_back(p);
  }
  for (std::size_t k = 1; k < hull.size(); ++k) {
    const int dx = hull[k].first - hull[k - 1].first;
    Rational s(hull[k].second - hull[k - 1].second, dx);
    s.canonicalize();
    if (!out.slopes.empty() && out.slopes.back().slope == s) {
      out.slopes.back().multiplicity += dx;
    } else {
      out.slopes.push_back({s, dx});
    }
  }
  return out;
}

Rational katz_invariant(const NewtonPolygon& polygon) {
  return polygon.slopes.empty() ? Rational(0) : polygon.slopes.back().slope;
}

}  // namespace stokeskit
