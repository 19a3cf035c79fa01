#include "stokeskit/families.hpp"

#include "stokeskit/errors.hpp"

namespace stokeskit {

namespace {

DiffOperator shifted_delta(const GaussianRational& c) { return DiffOperator::delta() + DiffOperator(RationalFunc(c)); }

}  // namespace

void check_pDq_parameters(int p, int q, const std::vector<GaussianRational>& mu, const std::vector<GaussianRational>& nu) {
  if (p < 1 || p >= q) throw DomainError("pDq needs 1 <= p < q");
  if (static_cast<int>(mu.size()) != p || static_cast<int>(nu.size()) != q)
    throw DomainError("pDq needs |mu| = p and |nu| = q");
  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) {
      const GaussianRational diff = mu[i] - mu[j];
      if (diff.is_real() && is_integer(diff.real()))
        throw DomainError("mu_" + std::to_string(i + 1) + " and mu_" + std::to_string(j + 1) + " must be distinct modulo Z");
    }
  }
}

DiffOperator build_pDq(int p, int q, const std::vector<GaussianRational>& mu, const std::vector<GaussianRational>& nu) {
  check_pDq_parameters(p, q, mu, nu);
  DiffOperator left = DiffOperator::z();
  for (const auto& m : mu) left = left * shifted_delta(m);
  if ((q - p) % 2 != 0) left = -left;
  DiffOperator right(1);
  for (const auto& n : nu) right = right * shifted_delta(n - GaussianRational(1));
  return left - right;
}

MatrixSystem ramified_family(int n, const std::vector<GaussianRational>& a) {
  if (n < 2) throw DomainError("ramified family needs n >= 2");
  if (static_cast<int>(a.size()) != n) throw DomainError("ramified family needs exactly n values of a");
  GaussianRational sum(0);
  for (const auto& v : a) sum += v;
  if (!sum.is_zero()) throw DomainError("sum of a must be 0");
  Mat<RationalFunc> m = Mat<RationalFunc>::Constant(n, n, RationalFunc(0));
  for (int k = 0; k < n; ++k) m(k, k) = RationalFunc(a[k]);
  for (int k = 1; k < n; ++k) m(k, k - 1) = RationalFunc(1);
  m(0, n - 1) = m(0, n - 1) + RationalFunc::z();
  return MatrixSystem(std::move(m));
}

MatrixSystem unramified_family(const std::vector<GaussianRational>& lambda, const Mat<GaussianRational>& t) {
  const auto n = static_cast<Eigen::Index>(lambda.size());
  if (n < 1) throw DomainError("unramified family needs at least one lambda");
  if (t.rows() != n || t.cols() != n) throw DomainError("T must be n x n");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!t(i, i).is_zero()) throw DomainError("T must have zero diagonal");
    for (Eigen::Index j = i + 1; j < n; ++j)
      if (lambda[i] == lambda[j]) throw DomainError("lambda values must be distinct");
  }
  Mat<RationalFunc> m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = i == j ? RationalFunc::z() * RationalFunc(lambda[i]) : RationalFunc(t(i, j));
  return MatrixSystem(std::move(m));
}

}  // namespace stokeskit
