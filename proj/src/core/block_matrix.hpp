#pragma once

#include <vector>

#include "core/matrix.hpp"

namespace blockdet {

/// n x n grid of equally sized p x q blocks, stored as explicit Matrix
/// values. Khatri-Rao outputs have different block sizes than their inputs,
/// so blocks are materialized rather than viewed into a flat buffer.
class BlockMatrix {
public:
    BlockMatrix(std::size_t n, std::size_t p, std::size_t q);
    BlockMatrix(std::size_t n, std::size_t p, std::size_t q, std::vector<Matrix> blocks);

    static BlockMatrix identity(std::size_t n, std::size_t p);

    std::size_t order() const { return n_; }        // block-grid order n
    std::size_t block_rows() const { return p_; }   // rows per block
    std::size_t block_cols() const { return q_; }   // cols per block
    bool square_blocks() const { return p_ == q_; }

    Matrix& block(std::size_t i, std::size_t j) { return blocks_[i * n_ + j]; }
    const Matrix& block(std::size_t i, std::size_t j) const { return blocks_[i * n_ + j]; }

private:
    std::size_t n_, p_, q_;
    std::vector<Matrix> blocks_;
};

/// Cuts an (n*p) x (n*q) matrix into an n x n grid of p x q blocks.
BlockMatrix partition(const Matrix& a, std::size_t n, std::size_t p, std::size_t q);

/// Reassembles the flat (n*p) x (n*q) matrix; inverse of partition.
Matrix flatten(const BlockMatrix& a);

/// Blockwise Kronecker product: block (i,j) of the result is
/// kronecker(a_ij, b_ij). Grids must have the same order. With 1x1 blocks
/// this performs exactly the operations of hadamard(); with n == 1 exactly
/// those of kronecker().
BlockMatrix khatri_rao(const BlockMatrix& a, const BlockMatrix& b);

/// Left fold of khatri_rao over a nonempty factor list.
BlockMatrix khatri_rao_all(const std::vector<BlockMatrix>& factors);

/// Top-left mu x mu block grid (mu in 1..n).
BlockMatrix leading_block_submatrix(const BlockMatrix& a, std::size_t mu);

/// The mu-th diagonal block (1-based, matching the leading-submatrix index).
const Matrix& diagonal_block(const BlockMatrix& a, std::size_t mu);

bool bitwise_equal(const BlockMatrix& a, const BlockMatrix& b);

} // namespace blockdet
