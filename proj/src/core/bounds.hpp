#pragma once

#include <vector>

#include "core/block_matrix.hpp"
#include "core/factor.hpp"
#include "core/matrix.hpp"
#include "core/report.hpp"

namespace blockdet {

inline constexpr double kDefaultTol = 1e-8;

/// |margin| at or below this counts as an equality hit, tracked separately
/// from tolerance slack.
inline constexpr double kEqualityEps = 1e-9;

/// prod a_ii >= det a for Hermitian PSD a.
InequalityReport hadamard_ineq(const Matrix& a, double tol = kDefaultTol);

/// Two-link chain: prod a_ii >= det A11 * det A22 >= det a, split after
/// split_row rows (1 <= split_row < dim).
InequalityReport fischer_ineq(const Matrix& a, std::size_t split_row, double tol = kDefaultTol);

/// Two-link chain: det(a o b) >= det a * prod b_ii >= det(ab); the product
/// determinant is det a * det b in log space.
InequalityReport oppenheim_ineq(const Matrix& a, const Matrix& b, double tol = kDefaultTol);

/// det(a o b) + det(ab) >= det a * prod b_ii + det b * prod a_ii, PSD inputs.
InequalityReport oppenheim_schur_ineq(const Matrix& a, const Matrix& b, double tol = kDefaultTol);

/// det(a o b) >= det(ab) * prod_mu (a_mumu det A_{mu-1}/det A_mu
///                                 + b_mumu det B_{mu-1}/det B_mu - 1), PD inputs.
InequalityReport chen_bound(const Matrix& a, const Matrix& b, double tol = kDefaultTol);

/// Blockwise version of chen_bound for two factors with block orders p and q:
/// the a-ratio is raised to q and the b-ratio to p.
InequalityReport thm21_bound(const BlockMatrix& a, const BlockMatrix& b, double tol = kDefaultTol);

/// thm21 restricted to factors sharing one block order.
InequalityReport kim_bound(const BlockMatrix& a, const BlockMatrix& b, double tol = kDefaultTol);

/// m-factor product bound on the Khatri-Rao product. With block orders q_i
/// and Q = q_1...q_m, factor i's ratios carry the exact integer exponent
/// Q/q_i (computed as the product of the other block orders):
///   det(*_i A^(i)) >= prod_i (det A^(i))^{Q/q_i}
///                     * prod_mu (sum_i ratio_i(mu)^{Q/q_i} - (m-1)).
InequalityReport thm24_bound(const std::vector<BlockMatrix>& factors, double tol = kDefaultTol);

/// m-factor sum bound, stated for PSD factors:
///   det(*_i A^(i)) + (m-1) prod_i (det A^(i))^{Q/q_i}
///     >= sum_i (prod_mu det A^(i)_mumu)^{Q/q_i} prod_{j!=i} (det A^(j))^{Q/q_j}.
/// On definite input the equivalent factored form
///   det(*_i A^(i)) >= prod_i (det A^(i))^{Q/q_i}
///                     * (sum_i (prod_mu det A^(i)_mumu / det A^(i))^{Q/q_i} - (m-1))
/// is also evaluated and the two routes to the right side are cross-checked.
InequalityReport thm25_ineq(const std::vector<BlockMatrix>& factors, double tol = kDefaultTol);

/// thm24 with all block orders 1 (Hadamard products of dense PD factors).
InequalityReport coro26_bound(const std::vector<Matrix>& factors, double tol = kDefaultTol);

/// thm25 with all block orders 1 (Hadamard products of dense PSD factors).
InequalityReport coro27_ineq(const std::vector<Matrix>& factors, double tol = kDefaultTol);

/// Scalar inequality on an m x n array with entries >= 1 (capped at 1e3):
///   prod_mu (sum_i a[i][mu] - (m-1)) >= sum_i prod_mu a[i][mu] - (m-1).
InequalityReport lemma23_check(const std::vector<std::vector<double>>& rows,
                               double tol = kDefaultTol);

/// Scalar inequality for entries >= 1 (capped at 1e3) and integer q in 1..16:
///   (sum_i b_i - (m-1))^q >= sum_i b_i^q - (m-1).
InequalityReport coro24_check(const std::vector<double>& values, long q,
                              double tol = kDefaultTol);

/// a + delta*(1 + max|a|)*I for Hermitian PSD a.
Matrix perturb_to_pd(const Matrix& a, double delta);

/// Wraps a dense Hermitian matrix as a block matrix with 1x1 blocks, the form
/// the scalar bounds share with the block evaluators.
BlockMatrix as_unit_blocks(const Matrix& a);

} // namespace blockdet
