#include "core/generate.hpp"

#include <cmath>

#include "core/rng.hpp"

namespace blockdet {

namespace {

Matrix random_factor(Rng& rng, std::size_t rows, std::size_t cols, ScalarKind kind) {
    Matrix g(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) {
            if (kind == ScalarKind::Complex) {
                double re, im;
                rng.normal_pair(re, im);
                g(i, j) = Scalar(re, im);
            } else {
                g(i, j) = Scalar(rng.normal(), 0.0);
            }
        }
    return g;
}

Matrix gram(const Matrix& g) {
    // g g^H with the upper triangle computed and mirrored, so the result is
    // exactly Hermitian and its diagonal exactly real.
    Matrix a(g.rows(), g.rows());
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = i; j < g.rows(); ++j) {
            Scalar acc(0.0, 0.0);
            for (std::size_t k = 0; k < g.cols(); ++k)
                acc += g(i, k) * std::conj(g(j, k));
            if (i == j) acc = Scalar(acc.real(), 0.0);
            a(i, j) = acc;
            a(j, i) = std::conj(acc);
        }
    return a;
}

/// Real draws end up with +/-0 imaginary parts after conjugation; rewrite
/// them to +0.0 so the JSON form uses plain numbers.
Matrix canonical_real(Matrix a, ScalarKind kind) {
    if (kind != ScalarKind::Real) return a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            a(i, j) = Scalar(a(i, j).real(), 0.0);
    return a;
}

double row_sum_eigenvalue_estimate(const Matrix& a) {
    double best = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j)
            row += std::abs(a(i, j));
        best = std::max(best, row);
    }
    return best;
}

} // namespace

Matrix random_pd(const GenConfig& cfg) {
    if (cfg.dim == 0)
        throw Error(ErrorCode::ConfigInvalid, "random_pd: dim must be positive");
    if (cfg.rank_deficit != 0)
        throw Error(ErrorCode::ConfigInvalid, "random_pd: rank_deficit must be 0");
    if (cfg.cond_cap < 1.0)
        throw Error(ErrorCode::ConfigInvalid, "random_pd: cond_cap must be >= 1");
    Rng rng(cfg.seed);
    const Matrix a = gram(random_factor(rng, cfg.dim, cfg.dim, cfg.scalar_kind));
    const double shift = row_sum_eigenvalue_estimate(a) / cfg.cond_cap;
    return canonical_real(add_diagonal(a, shift), cfg.scalar_kind);
}

Matrix random_psd_singular(const GenConfig& cfg) {
    if (cfg.dim == 0)
        throw Error(ErrorCode::ConfigInvalid, "random_psd_singular: dim must be positive");
    if (cfg.rank_deficit < 1 || cfg.rank_deficit >= cfg.dim)
        throw Error(ErrorCode::ConfigInvalid,
                    "random_psd_singular: rank_deficit must be in [1, dim)");
    Rng rng(cfg.seed);
    return canonical_real(gram(random_factor(rng, cfg.dim, cfg.dim - cfg.rank_deficit, cfg.scalar_kind)),
                          cfg.scalar_kind);
}

BlockMatrix random_block_pd(const GenConfig& cfg) {
    if (cfg.n == 0 || cfg.block_dim == 0)
        throw Error(ErrorCode::ConfigInvalid, "random_block_pd: n and block_dim must be positive");
    GenConfig dense = cfg;
    dense.dim = cfg.n * cfg.block_dim;
    return partition(random_pd(dense), cfg.n, cfg.block_dim, cfg.block_dim);
}

Matrix random_hermitian_indefinite(std::uint64_t seed, std::size_t dim, ScalarKind kind) {
    Rng rng(seed);
    return symmetrized(random_factor(rng, dim, dim, kind));
}

std::vector<std::vector<double>> random_ge1_array(std::uint64_t seed, std::size_t m,
                                                  std::size_t n, double cap) {
    if (cap < 1.0)
        throw Error(ErrorCode::ConfigInvalid, "random_ge1_array: cap must be >= 1");
    if (m == 0 || n == 0)
        throw Error(ErrorCode::ConfigInvalid, "random_ge1_array: m and n must be positive");
    Rng rng(seed);
    std::vector<std::vector<double>> out(m, std::vector<double>(n));
    for (auto& row : out)
        for (double& v : row)
            v = 1.0 + rng.uniform() * (cap - 1.0);
    return out;
}

} // namespace blockdet
