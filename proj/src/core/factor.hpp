#pragma once

#include <vector>

#include "core/matrix.hpp"

namespace blockdet {

/// Determinant carried as a unit-modulus phase plus the natural log of the
/// magnitude. Integer powers and products of determinants that would overflow
/// a double stay exact-ish in this form. A zero determinant is the sentinel
/// {phase = 0, log_abs = -inf}.
struct LogDet {
    Scalar phase{1.0, 0.0};
    double log_abs{0.0};

    static LogDet zero();
    bool is_zero() const;

    /// -1 / 0 / +1 for real-phase determinants; throws DomainError when the
    /// phase has a substantial imaginary part.
    int real_sign() const;
};

LogDet logdet_mul(const LogDet& a, const LogDet& b);
LogDet logdet_pow(const LogDet& a, long exponent);

/// Lower-triangular L with L L^H == symmetrized(a) + shift*I and strictly
/// positive real diagonal. Fails with NotPositiveDefinite on the first
/// non-positive pivot.
Matrix cholesky(const Matrix& a, double shift = 0.0);

/// log det of a Hermitian positive definite matrix via cholesky; phase is
/// exactly +1.
LogDet log_det_pd(const Matrix& a);

/// One factorization, many prefixes: log det of every leading principal
/// submatrix whose order appears in `cuts` (ascending, each <= dim). The
/// result for cut k is bitwise identical to log_det_pd(leading_principal(a,k))
/// because a Cholesky factor of a leading corner is the leading corner of the
/// Cholesky factor, computed by the same operations in the same order.
std::vector<double> log_det_pd_prefixes(const Matrix& a, const std::vector<std::size_t>& cuts);

/// log det for Hermitian positive SEMIdefinite input: positive definite
/// matrices factor normally; a pivot at or below the relative floor
/// 1e-10*(1+max|a|) ends the factorization with a zero determinant, and a
/// pivot below -1e-8*(1+max|a|) rejects the input as indefinite.
LogDet log_det_psd(const Matrix& a);

/// LU with partial pivoting; the phase tracks row swaps and complex pivot
/// phases. Works on any square matrix.
LogDet det_lu(const Matrix& a);

/// Brute-force determinant by cofactor expansion along the first row,
/// accumulated as a plain complex number. Reference oracle; dimension
/// capped at 8.
LogDet det_cofactor_oracle(const Matrix& a);

} // namespace blockdet
