#pragma once

#include <vector>

#include "stokeskit/parser.hpp"
#include "stokeskit/system.hpp"

namespace stokeskit {

/// Throws DomainError unless 1 ≤ p < q, the lengths match and the μ_j are distinct mod Z.
void check_pDq_parameters(int p, int q, const std::vector<GaussianRational>& mu, const std::vector<GaussianRational>& nu);

/// (−1)^{q−p} z ∏_{j≤p}(δ+μ_j) − ∏_{j≤q}(δ+ν_j−1). Requires 1 ≤ p < q and the μ_j
/// pairwise distinct modulo Z.
DiffOperator build_pDq(int p, int q, const std::vector<GaussianRational>& mu, const std::vector<GaussianRational>& nu);

/// The universal totally ramified family "δ + M": M has diagonal a_0..a_{n−1},
/// subdiagonal 1 and z in the top-right corner; Σ a_j = 0.
///
/// Sign convention: the returned system is δY = M·Y. With this reading the loop
/// monodromy around 0 has eigenvalues e^{2πi a_j}, the formal eigenvalues are
/// ζ^k z^{1/n}, and a = 0 is the companion system of δⁿ − z up to reordering.
MatrixSystem ramified_family(int n, const std::vector<GaussianRational>& a);

/// "δ + z·diag(λ) + T" stored as δY = (z·diag(λ) + T)·Y (same convention as above),
/// λ pairwise distinct and T with zero diagonal.
MatrixSystem unramified_family(const std::vector<GaussianRational>& lambda, const Mat<GaussianRational>& t);

}  // namespace stokeskit
