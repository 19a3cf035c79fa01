#pragma once

#include <complex>
#include <string>
#include <vector>

#include "json.hpp"
#include "stokeskit/cyclotomic.hpp"
#include "stokeskit/eigen_support.hpp"
#include "stokeskit/gaussian.hpp"
#include "stokeskit/mpoly.hpp"
#include "stokeskit/rational.hpp"

namespace stokeskit::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "stokeskit.report/1";

inline json to_json(const Rational& r) { return to_string(r); }
inline json to_json(int v) { return v; }
inline json to_json(long long v) { return v; }

inline json to_json(const GaussianRational& g) {
  if (g.is_real()) return to_string(g.real());
  return json{{"re", to_string(g.real())}, {"im", to_string(g.imag())}};
}

inline json to_json(const std::complex<double>& c) { return json{{"re", c.real()}, {"im", c.imag()}}; }

/// Exact values stay strings; values outside Q(i) also carry the field element and floats.
inline json to_json(const Cyclotomic& x) {
  const Cyclotomic re = (x + x.conj()) * Cyclotomic(GaussianRational(make_rational(1, 2)));
  const Cyclotomic im = (x - x.conj()) * Cyclotomic(GaussianRational(Rational(0), make_rational(-1, 2)));
  if (re.is_rational() && im.is_rational()) return to_json(GaussianRational(re.rational_value(), im.rational_value()));
  const auto c = x.to_complex();
  return json{{"re", c.real()}, {"im", c.imag()}, {"exact", x.to_string()}};
}

/// Exact zero stays an integer so exact-mode reports read "residual": 0.
inline json residual_json(double r) { return r == 0 ? json(0) : json(r); }

template <class K>
json to_json(const MPoly<K>& p) {
  return p.to_string();
}

template <class K>
json matrix_json(const Mat<K>& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline json matrix_json(const MatC& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class T>
json list_json(const std::vector<T>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

}  // namespace stokeskit::cli
