#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "core/errors.hpp"

namespace blockdet {

using Scalar = std::complex<double>;

/// Dense row-major complex matrix. Entries are validated to be finite on
/// every construction path, so a Matrix can always be serialized and fed to
/// the factorizations without further checks.
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries);
    Matrix(std::initializer_list<std::initializer_list<Scalar>> rows);

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Scalar& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Scalar& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    const std::vector<Scalar>& entries() const { return entries_; }

    /// max_ij |a_ij|, the scale used by all relative tolerances.
    double max_abs() const;

    /// Throws NonFiniteEntry if any stored value has a NaN/Inf component.
    void validate_finite() const;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Scalar> entries_;
};

bool same_shape(const Matrix& a, const Matrix& b);

/// Exact bitwise equality of all entries (distinguishes -0.0 from +0.0).
bool bitwise_equal(const Matrix& a, const Matrix& b);

Matrix conjugate_transpose(const Matrix& a);

Matrix matmul(const Matrix& a, const Matrix& b);

Matrix add(const Matrix& a, const Matrix& b);

/// Multiplies every component by a real factor.
Matrix scaled(const Matrix& a, double factor);

/// (a + a^H)/2; requires a square.
Matrix symmetrized(const Matrix& a);

/// a + shift * I on a square matrix.
Matrix add_diagonal(const Matrix& a, double shift);

bool is_hermitian(const Matrix& a, double tol);

/// Default Hermiticity tolerance, 1e-10 * (1 + max|a_ij|).
double hermitian_tol(const Matrix& a);

Matrix kronecker(const Matrix& a, const Matrix& b);

Matrix hadamard(const Matrix& a, const Matrix& b);

/// Top-left k x k corner of a square matrix.
Matrix leading_principal(const Matrix& a, std::size_t k);

/// Square corner at rows/cols [lo, hi).
Matrix principal_range(const Matrix& a, std::size_t lo, std::size_t hi);

} // namespace blockdet
