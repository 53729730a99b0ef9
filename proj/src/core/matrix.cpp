#include "core/matrix.hpp"

#include <bit>
#include <cmath>
#include <cstdint>

namespace blockdet {

namespace {

void check_positive_dims(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0)
        throw Error(ErrorCode::DimensionMismatch, "matrix dimensions must be positive");
}

} // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Scalar(0.0, 0.0)) {
    check_positive_dims(rows, cols);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Scalar> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    check_positive_dims(rows, cols);
    if (entries_.size() != rows_ * cols_)
        throw Error(ErrorCode::DimensionMismatch, "entry count does not match rows*cols");
    validate_finite();
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Scalar>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    check_positive_dims(rows_, cols_);
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_)
            throw Error(ErrorCode::DimensionMismatch, "ragged initializer rows");
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
    validate_finite();
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1.0, 0.0);
    return m;
}

double Matrix::max_abs() const {
    double best = 0.0;
    for (const Scalar& v : entries_) best = std::max(best, std::abs(v));
    return best;
}

void Matrix::validate_finite() const {
    for (const Scalar& v : entries_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw Error(ErrorCode::NonFiniteEntry, "matrix entries must be finite");
}

bool same_shape(const Matrix& a, const Matrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols();
}

bool bitwise_equal(const Matrix& a, const Matrix& b) {
    if (!same_shape(a, b)) return false;
    const auto& ea = a.entries();
    const auto& eb = b.entries();
    for (std::size_t k = 0; k < ea.size(); ++k) {
        if (std::bit_cast<std::uint64_t>(ea[k].real()) != std::bit_cast<std::uint64_t>(eb[k].real()))
            return false;
        if (std::bit_cast<std::uint64_t>(ea[k].imag()) != std::bit_cast<std::uint64_t>(eb[k].imag()))
            return false;
    }
    return true;
}

Matrix conjugate_transpose(const Matrix& a) {
    Matrix r(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            r(j, i) = std::conj(a(i, j));
    return r;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows())
        throw Error(ErrorCode::DimensionMismatch, "matmul: inner dimensions differ");
    Matrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Scalar aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j)
                r(i, j) += aik * b(k, j);
        }
    }
    return r;
}

Matrix add(const Matrix& a, const Matrix& b) {
    if (!same_shape(a, b))
        throw Error(ErrorCode::DimensionMismatch, "add: shapes differ");
    Matrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            r(i, j) = a(i, j) + b(i, j);
    r.validate_finite();
    return r;
}

Matrix scaled(const Matrix& a, double factor) {
    Matrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            r(i, j) = Scalar(factor * a(i, j).real(), factor * a(i, j).imag());
    r.validate_finite();
    return r;
}

Matrix symmetrized(const Matrix& a) {
    if (!a.is_square())
        throw Error(ErrorCode::NotSquare, "symmetrized: matrix must be square");
    Matrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            r(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    return r;
}

Matrix add_diagonal(const Matrix& a, double shift) {
    if (!a.is_square())
        throw Error(ErrorCode::NotSquare, "add_diagonal: matrix must be square");
    Matrix r = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        r(i, i) += Scalar(shift, 0.0);
    r.validate_finite();
    return r;
}

bool is_hermitian(const Matrix& a, double tol) {
    if (!a.is_square())
        throw Error(ErrorCode::NotSquare, "is_hermitian: matrix must be square");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i; j < a.cols(); ++j)
            worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
    return worst <= tol;
}

double hermitian_tol(const Matrix& a) {
    return 1e-10 * (1.0 + a.max_abs());
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
    Matrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Scalar aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return r;
}

Matrix hadamard(const Matrix& a, const Matrix& b) {
    if (!same_shape(a, b))
        throw Error(ErrorCode::DimensionMismatch, "hadamard: shapes differ");
    Matrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            r(i, j) = a(i, j) * b(i, j);
    return r;
}

Matrix leading_principal(const Matrix& a, std::size_t k) {
    if (!a.is_square())
        throw Error(ErrorCode::NotSquare, "leading_principal: matrix must be square");
    if (k < 1 || k > a.rows())
        throw Error(ErrorCode::IndexOutOfRange, "leading_principal: order out of range");
    return principal_range(a, 0, k);
}

Matrix principal_range(const Matrix& a, std::size_t lo, std::size_t hi) {
    if (!a.is_square())
        throw Error(ErrorCode::NotSquare, "principal_range: matrix must be square");
    if (lo >= hi || hi > a.rows())
        throw Error(ErrorCode::IndexOutOfRange, "principal_range: bad range");
    Matrix r(hi - lo, hi - lo);
    for (std::size_t i = lo; i < hi; ++i)
        for (std::size_t j = lo; j < hi; ++j)
            r(i - lo, j - lo) = a(i, j);
    return r;
}

} // namespace blockdet
