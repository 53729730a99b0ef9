#include "core/block_matrix.hpp"

namespace blockdet {

namespace {

void check_grid(std::size_t n, std::size_t p, std::size_t q) {
    if (n == 0 || p == 0 || q == 0)
        throw Error(ErrorCode::DimensionMismatch, "block grid and block dimensions must be positive");
}

} // namespace

BlockMatrix::BlockMatrix(std::size_t n, std::size_t p, std::size_t q)
    : n_(n), p_(p), q_(q), blocks_(n * n, Matrix(p, q)) {
    check_grid(n, p, q);
}

BlockMatrix::BlockMatrix(std::size_t n, std::size_t p, std::size_t q, std::vector<Matrix> blocks)
    : n_(n), p_(p), q_(q), blocks_(std::move(blocks)) {
    check_grid(n, p, q);
    if (blocks_.size() != n * n)
        throw Error(ErrorCode::DimensionMismatch, "block count does not match n*n");
    for (const Matrix& b : blocks_)
        if (b.rows() != p || b.cols() != q)
            throw Error(ErrorCode::DimensionMismatch, "every block must be p x q");
}

BlockMatrix BlockMatrix::identity(std::size_t n, std::size_t p) {
    BlockMatrix m(n, p, p);
    for (std::size_t i = 0; i < n; ++i)
        m.block(i, i) = Matrix::identity(p);
    return m;
}

BlockMatrix partition(const Matrix& a, std::size_t n, std::size_t p, std::size_t q) {
    check_grid(n, p, q);
    if (a.rows() != n * p || a.cols() != n * q)
        throw Error(ErrorCode::DimensionMismatch, "partition: matrix is not (n*p) x (n*q)");
    BlockMatrix out(n, p, q);
    for (std::size_t bi = 0; bi < n; ++bi)
        for (std::size_t bj = 0; bj < n; ++bj) {
            Matrix blk(p, q);
            for (std::size_t i = 0; i < p; ++i)
                for (std::size_t j = 0; j < q; ++j)
                    blk(i, j) = a(bi * p + i, bj * q + j);
            out.block(bi, bj) = std::move(blk);
        }
    return out;
}

Matrix flatten(const BlockMatrix& a) {
    const std::size_t n = a.order(), p = a.block_rows(), q = a.block_cols();
    Matrix out(n * p, n * q);
    for (std::size_t bi = 0; bi < n; ++bi)
        for (std::size_t bj = 0; bj < n; ++bj) {
            const Matrix& blk = a.block(bi, bj);
            for (std::size_t i = 0; i < p; ++i)
                for (std::size_t j = 0; j < q; ++j)
                    out(bi * p + i, bj * q + j) = blk(i, j);
        }
    return out;
}

BlockMatrix khatri_rao(const BlockMatrix& a, const BlockMatrix& b) {
    if (a.order() != b.order())
        throw Error(ErrorCode::BlockGridMismatch, "khatri_rao: block-grid orders differ");
    const std::size_t n = a.order();
    BlockMatrix out(n, a.block_rows() * b.block_rows(), a.block_cols() * b.block_cols());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            out.block(i, j) = kronecker(a.block(i, j), b.block(i, j));
    return out;
}

BlockMatrix khatri_rao_all(const std::vector<BlockMatrix>& factors) {
    if (factors.empty())
        throw Error(ErrorCode::EmptyFactorList, "khatri_rao_all: no factors");
    BlockMatrix acc = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i)
        acc = khatri_rao(acc, factors[i]);
    return acc;
}

BlockMatrix leading_block_submatrix(const BlockMatrix& a, std::size_t mu) {
    if (mu < 1 || mu > a.order())
        throw Error(ErrorCode::IndexOutOfRange, "leading_block_submatrix: order out of range");
    BlockMatrix out(mu, a.block_rows(), a.block_cols());
    for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = 0; j < mu; ++j)
            out.block(i, j) = a.block(i, j);
    return out;
}

const Matrix& diagonal_block(const BlockMatrix& a, std::size_t mu) {
    if (mu < 1 || mu > a.order())
        throw Error(ErrorCode::IndexOutOfRange, "diagonal_block: index out of range");
    return a.block(mu - 1, mu - 1);
}

bool bitwise_equal(const BlockMatrix& a, const BlockMatrix& b) {
    if (a.order() != b.order() || a.block_rows() != b.block_rows() ||
        a.block_cols() != b.block_cols())
        return false;
    for (std::size_t i = 0; i < a.order(); ++i)
        for (std::size_t j = 0; j < a.order(); ++j)
            if (!bitwise_equal(a.block(i, j), b.block(i, j)))
                return false;
    return true;
}

} // namespace blockdet
