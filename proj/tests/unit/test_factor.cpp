#include <doctest.h>

#include <cmath>

#include "core/factor.hpp"
#include "core/generate.hpp"

using namespace blockdet;

TEST_CASE("cholesky on small matrices") {
    CHECK(bitwise_equal(cholesky(Matrix::identity(3)), Matrix::identity(3)));

    Matrix scalar{{4.0}};
    CHECK(cholesky(scalar)(0, 0).real() == doctest::Approx(2.0).epsilon(1e-15));

    Matrix a{{2.0, 1.0}, {1.0, 2.0}};
    Matrix lower = cholesky(a);
    CHECK(lower(0, 0).real() == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(lower(1, 0).real() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK(lower(1, 1).real() == doctest::Approx(std::sqrt(1.5)).epsilon(1e-15));
    CHECK(lower(0, 1) == Scalar(0.0, 0.0));
}

TEST_CASE("cholesky error signalling") {
    CHECK_THROWS_WITH_AS(cholesky(Matrix{{-1.0}}), doctest::Contains("pivot"), Error);
    CHECK_THROWS_AS(cholesky(Matrix{{0.0, 1.0}, {0.0, 0.0}}), Error); // not Hermitian
    CHECK_THROWS_AS(cholesky(Matrix(2, 3)), Error);                   // not square
    // Singular within rounding: pivot is exactly zero.
    CHECK_THROWS_AS(cholesky(Matrix{{1.0, 1.0}, {1.0, 1.0}}), Error);
}

TEST_CASE("cholesky reconstruction stays within the relative bound") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        GenConfig cfg;
        cfg.seed = seed;
        cfg.dim = 1 + seed % 8;
        cfg.scalar_kind = seed % 2 ? ScalarKind::Complex : ScalarKind::Real;
        const Matrix a = random_pd(cfg);
        const double shift = seed % 3 == 0 ? 0.5 : 0.0;
        const Matrix lower = cholesky(a, shift);
        const Matrix rebuilt = matmul(lower, conjugate_transpose(lower));
        const Matrix target = add_diagonal(a, shift);
        double worst = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                worst = std::max(worst, std::abs(rebuilt(i, j) - target(i, j)));
        CHECK(worst <= 1e-10 * (1.0 + a.max_abs()));
    }
}

TEST_CASE("log_det_pd") {
    CHECK(log_det_pd(Matrix::identity(4)).log_abs == doctest::Approx(0.0));
    CHECK(log_det_pd(Matrix{{2.0, 0.0}, {0.0, 3.0}}).log_abs ==
          doctest::Approx(std::log(6.0)).epsilon(1e-14));
    CHECK(log_det_pd(Matrix{{2.0, 1.0}, {1.0, 2.0}}).log_abs ==
          doctest::Approx(std::log(3.0)).epsilon(1e-14));
    CHECK(log_det_pd(Matrix::identity(2)).phase == Scalar(1.0, 0.0));
}

TEST_CASE("log_det_pd_prefixes matches factoring each corner separately") {
    GenConfig cfg;
    cfg.seed = 77;
    cfg.dim = 9;
    cfg.scalar_kind = ScalarKind::Complex;
    const Matrix a = random_pd(cfg);
    const std::vector<std::size_t> cuts{3, 6, 9};
    const std::vector<double> got = log_det_pd_prefixes(a, cuts);
    for (std::size_t k = 0; k < cuts.size(); ++k) {
        const double expect = log_det_pd(leading_principal(a, cuts[k])).log_abs;
        CHECK(got[k] == expect); // bitwise: same operations in the same order
    }
}

TEST_CASE("det_lu on degenerate and permuted matrices") {
    const LogDet singular = det_lu(Matrix{{1.0, 1.0}, {1.0, 1.0}});
    CHECK(singular.is_zero());
    CHECK(singular.real_sign() == 0);

    const LogDet swap = det_lu(Matrix{{0.0, 1.0}, {1.0, 0.0}});
    CHECK(swap.real_sign() == -1);
    CHECK(swap.log_abs == doctest::Approx(0.0));

    const LogDet pd = det_lu(Matrix{{2.0, 1.0}, {1.0, 2.0}});
    CHECK(pd.real_sign() == 1);
    CHECK(pd.log_abs == doctest::Approx(std::log(3.0)).epsilon(1e-14));

    CHECK_THROWS_AS(det_lu(Matrix(2, 3)), Error);
}

TEST_CASE("cofactor oracle basics") {
    const LogDet one = det_cofactor_oracle(Matrix{{Scalar(-2.0, 0.0)}});
    CHECK(one.real_sign() == -1);
    CHECK(one.log_abs == doctest::Approx(std::log(2.0)));

    const LogDet id5 = det_cofactor_oracle(Matrix::identity(5));
    CHECK(id5.real_sign() == 1);
    CHECK(id5.log_abs == doctest::Approx(0.0));

    CHECK_THROWS_AS(det_cofactor_oracle(Matrix::identity(9)), Error);
}

TEST_CASE("lu determinant agrees with the cofactor oracle") {
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        const std::size_t dim = 1 + seed % 6;
        const ScalarKind kind = seed % 2 ? ScalarKind::Complex : ScalarKind::Real;
        Matrix a = random_hermitian_indefinite(seed, dim, kind);
        const LogDet lu = det_lu(a);
        const LogDet co = det_cofactor_oracle(a);
        if (lu.is_zero() || co.is_zero()) continue;
        CHECK(std::abs(lu.log_abs - co.log_abs) <= 1e-8);
        CHECK(std::abs(lu.phase - co.phase) <= 1e-6);
    }
    // Definite draws as well.
    for (std::uint64_t seed = 100; seed <= 120; ++seed) {
        GenConfig cfg;
        cfg.seed = seed;
        cfg.dim = 4;
        cfg.scalar_kind = ScalarKind::Complex;
        const Matrix a = random_pd(cfg);
        CHECK(std::abs(det_lu(a).log_abs - det_cofactor_oracle(a).log_abs) <= 1e-9);
    }
}

TEST_CASE("lu and cholesky determinants agree on definite input") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        GenConfig cfg;
        cfg.seed = seed;
        cfg.dim = 1 + seed % 8;
        cfg.scalar_kind = seed % 2 ? ScalarKind::Complex : ScalarKind::Real;
        const Matrix a = random_pd(cfg);
        const LogDet lu = det_lu(a);
        const LogDet ch = log_det_pd(a);
        CHECK(lu.real_sign() == 1);
        CHECK(std::abs(lu.log_abs - ch.log_abs) <=
              1e-9 * std::max(1.0, std::abs(ch.log_abs)));
    }
}

TEST_CASE("kronecker determinant identity") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        GenConfig cfg;
        cfg.seed = seed;
        cfg.cond_cap = 1e3;
        cfg.scalar_kind = seed % 2 ? ScalarKind::Complex : ScalarKind::Real;
        cfg.dim = 2;
        const Matrix a = random_pd(cfg);
        cfg.seed = seed + 1000;
        cfg.dim = 3;
        const Matrix b = random_pd(cfg);
        const double assembled = det_lu(kronecker(a, b)).log_abs;
        const double split = 3.0 * log_det_pd(a).log_abs + 2.0 * log_det_pd(b).log_abs;
        CHECK(assembled == doctest::Approx(split).epsilon(1e-10));
    }
}

TEST_CASE("log_det_psd flags singular input as an exact zero") {
    CHECK(log_det_psd(Matrix{{1.0, 0.0}, {0.0, 0.0}}).is_zero());
    CHECK(log_det_psd(Matrix{{1.0, 1.0}, {1.0, 1.0}}).is_zero());

    GenConfig cfg;
    cfg.seed = 5;
    cfg.dim = 5;
    cfg.rank_deficit = 2;
    CHECK(log_det_psd(random_psd_singular(cfg)).is_zero());

    // Definite input matches the strict path bitwise.
    cfg.rank_deficit = 0;
    const Matrix a = random_pd(cfg);
    CHECK(log_det_psd(a).log_abs == log_det_pd(a).log_abs);

    CHECK_THROWS_AS(log_det_psd(Matrix{{-1.0}}), Error);
}

TEST_CASE("logdet arithmetic") {
    const LogDet zero = LogDet::zero();
    CHECK(zero.is_zero());
    CHECK(std::isinf(zero.log_abs));
    CHECK(logdet_mul(zero, LogDet{Scalar(1.0, 0.0), 3.0}).is_zero());

    const LogDet d{Scalar(0.0, 1.0), std::log(2.0)};
    const LogDet p = logdet_pow(d, 4);
    CHECK(p.phase.real() == doctest::Approx(1.0));
    CHECK(p.log_abs == doctest::Approx(4.0 * std::log(2.0)));
}
