#pragma once

#include <cstdint>
#include <vector>

#include "core/block_matrix.hpp"
#include "core/matrix.hpp"

namespace blockdet {

enum class ScalarKind { Real, Complex };

/// Sampling plan for one random instance. dim is the matrix order for dense
/// draws; block draws use (n, block_dim) instead.
struct GenConfig {
    std::uint64_t seed = 0;
    std::size_t dim = 0;
    std::size_t n = 0;
    std::size_t block_dim = 0;
    double cond_cap = 1e4;
    ScalarKind scalar_kind = ScalarKind::Real;
    std::size_t rank_deficit = 0;
};

/// G G^H + delta*I with standard-normal G and delta sized from a row-sum
/// estimate of the largest eigenvalue so the condition number stays at or
/// under cond_cap (plus one). Identical seeds give bitwise-identical output.
Matrix random_pd(const GenConfig& cfg);

/// Gram matrix of a dim x (dim - rank_deficit) normal factor; numerically
/// singular by construction. rank_deficit must be in [1, dim).
Matrix random_psd_singular(const GenConfig& cfg);

/// random_pd of order n*block_dim, partitioned into an n x n grid.
BlockMatrix random_block_pd(const GenConfig& cfg);

/// Hermitian with standard-normal entries (G + G^H)/2; generically
/// indefinite. Used by oracle cross-check sampling, not by the bounds.
Matrix random_hermitian_indefinite(std::uint64_t seed, std::size_t dim, ScalarKind kind);

/// m x n array with entries uniform in [1, cap].
std::vector<std::vector<double>> random_ge1_array(std::uint64_t seed, std::size_t m,
                                                  std::size_t n, double cap);

} // namespace blockdet
