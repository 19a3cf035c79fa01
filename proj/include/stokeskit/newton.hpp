#pragma once

#include <utility>
#include <vector>

#include "stokeskit/operator.hpp"
#include "stokeskit/rational.hpp"

namespace stokeskit {

struct Slope {
  Rational slope;
  int multiplicity;
  friend bool operator==(const Slope&, const Slope&) = default;
};

/// Newton polygon of a δ-operator at z = ∞.
struct NewtonPolygon {
  /// (δ-degree i, −deg_z c_i) for every nonzero coefficient, after clearing denominators.
  std::vector<std::pair<int, int>> points;
  /// Lower boundary slopes, strictly increasing; multiplicities sum to the degree.
  std::vector<Slope> slopes;
  /// Polynomial the operator was left-multiplied by to clear denominators.
  Poly clearing_factor{1};

  int degree() const;
};

NewtonPolygon newton_polygon(const DiffOperator& op);

/// Largest slope (0 for a regular singular operator).
Rational katz_invariant(const NewtonPolygon& polygon);

}  // namespace stokeskit
