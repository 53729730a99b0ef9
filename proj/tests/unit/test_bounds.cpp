#include <doctest.h>

#include <cmath>

#include "core/bounds.hpp"
#include "core/factor.hpp"
#include "core/generate.hpp"
#include "core/logsum.hpp"
#include "core/rng.hpp"

using namespace blockdet;

namespace {

const Matrix kA{{2.0, 1.0}, {1.0, 2.0}};
const Matrix kB{{3.0, 1.0}, {1.0, 3.0}};

Matrix pd(std::uint64_t seed, std::size_t dim, ScalarKind kind = ScalarKind::Real,
          double cond = 1e4) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.dim = dim;
    cfg.cond_cap = cond;
    cfg.scalar_kind = kind;
    return random_pd(cfg);
}

BlockMatrix block_pd(std::uint64_t seed, std::size_t n, std::size_t d,
                     ScalarKind kind = ScalarKind::Complex) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.n = n;
    cfg.block_dim = d;
    cfg.scalar_kind = kind;
    return random_block_pd(cfg);
}

bool reports_equal(const InequalityReport& a, const InequalityReport& b) {
    if (a.lhs_log != b.lhs_log || a.rhs_log != b.rhs_log || a.margin_log != b.margin_log)
        return false;
    if (a.terms.size() != b.terms.size()) return false;
    for (std::size_t t = 0; t < a.terms.size(); ++t) {
        if (a.terms[t].ratio_terms != b.terms[t].ratio_terms) return false;
        if (a.terms[t].r_mu != b.terms[t].r_mu || a.terms[t].s_mu != b.terms[t].s_mu)
            return false;
    }
    return true;
}

} // namespace

TEST_CASE("hadamard inequality") {
    const auto id = hadamard_ineq(Matrix::identity(4), 1e-8);
    CHECK(id.margin_log == doctest::Approx(0.0));
    CHECK(id.holds);

    const auto diag = hadamard_ineq(Matrix{{2.0, 0.0}, {0.0, 5.0}}, 1e-8);
    CHECK(diag.lhs_log == doctest::Approx(std::log(10.0)));
    CHECK(diag.margin_log == doctest::Approx(0.0));

    const auto off = hadamard_ineq(kA, 1e-8);
    CHECK(off.margin_log == doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-12));

    CHECK_THROWS_AS(hadamard_ineq(Matrix{{-1.0, 0.0}, {0.0, 1.0}}, 1e-8), Error);
    CHECK_THROWS_AS(hadamard_ineq(Matrix{{0.0, 1.0}, {0.0, 0.0}}, 1e-8), Error);
}

TEST_CASE("fischer chain") {
    const auto split = fischer_ineq(kA, 1, 1e-8);
    REQUIRE(split.links.size() == 2);
    CHECK(std::exp(split.links[0].lhs_log) == doctest::Approx(4.0));
    CHECK(std::exp(split.links[0].rhs_log) == doctest::Approx(4.0));
    CHECK(std::exp(split.links[1].rhs_log) == doctest::Approx(3.0));
    CHECK(split.links[0].margin_log == doctest::Approx(0.0));
    CHECK(split.holds);

    // Block-diagonal input: the split link is an equality.
    Matrix bd(4, 4);
    const Matrix a1 = pd(3, 2), a2 = pd(4, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            bd(i, j) = a1(i, j);
            bd(i + 2, j + 2) = a2(i, j);
        }
    const auto blockdiag = fischer_ineq(bd, 2, 1e-8);
    CHECK(std::abs(blockdiag.links[1].margin_log) <= 1e-12);

    const auto idc = fischer_ineq(Matrix::identity(5), 3, 1e-8);
    CHECK(idc.links[0].margin_log == doctest::Approx(0.0));
    CHECK(idc.links[1].margin_log == doctest::Approx(0.0));

    CHECK_THROWS_AS(fischer_ineq(kA, 0, 1e-8), Error);
    CHECK_THROWS_AS(fischer_ineq(kA, 2, 1e-8), Error);
}

TEST_CASE("oppenheim chain on the worked pair") {
    const auto rep = oppenheim_ineq(kA, kB, 1e-8);
    REQUIRE(rep.links.size() == 2);
    CHECK(std::exp(rep.links[0].lhs_log) == doctest::Approx(35.0).epsilon(1e-12));
    CHECK(std::exp(rep.links[0].rhs_log) == doctest::Approx(27.0).epsilon(1e-12));
    CHECK(std::exp(rep.links[1].rhs_log) == doctest::Approx(24.0).epsilon(1e-12));
    CHECK(rep.holds);

    const auto id = oppenheim_ineq(Matrix::identity(3), Matrix::identity(3), 1e-8);
    CHECK(id.margin_log == doctest::Approx(0.0));

    // b == I reduces the first link to the hadamard inequality.
    const Matrix a = pd(17, 4);
    const auto red = oppenheim_ineq(a, Matrix::identity(4), 1e-8);
    const auto had = hadamard_ineq(a, 1e-8);
    CHECK(red.links[0].lhs_log == doctest::Approx(had.lhs_log).epsilon(1e-14));
    CHECK(red.links[0].rhs_log == doctest::Approx(had.rhs_log).epsilon(1e-14));

    CHECK_THROWS_AS(oppenheim_ineq(kA, Matrix::identity(3), 1e-8), Error);
}

TEST_CASE("oppenheim-schur on the worked pair is an equality") {
    const auto rep = oppenheim_schur_ineq(kA, kB, 1e-8);
    CHECK(std::exp(rep.lhs_log) == doctest::Approx(59.0).epsilon(1e-12));
    CHECK(std::exp(rep.rhs_log) == doctest::Approx(59.0).epsilon(1e-12));
    CHECK(std::abs(rep.margin_log) <= 1e-12);
    CHECK(rep.holds);

    const auto id = oppenheim_schur_ineq(Matrix::identity(3), Matrix::identity(3), 1e-8);
    CHECK(std::exp(id.lhs_log) == doctest::Approx(2.0));
    CHECK(std::abs(id.margin_log) <= 1e-12);

    // Brute-force cross-check on random 3x3 pairs via the cofactor oracle.
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const Matrix a = pd(seed, 3, ScalarKind::Complex);
        const Matrix b = pd(seed + 50, 3, ScalarKind::Complex);
        const auto r = oppenheim_schur_ineq(a, b, 1e-8);
        const double lhs = std::exp(det_cofactor_oracle(hadamard(a, b)).log_abs) +
                           std::exp(det_cofactor_oracle(a).log_abs) *
                               std::exp(det_cofactor_oracle(b).log_abs);
        double diag_a = 1.0, diag_b = 1.0;
        for (std::size_t i = 0; i < 3; ++i) {
            diag_a *= a(i, i).real();
            diag_b *= b(i, i).real();
        }
        const double rhs = std::exp(det_cofactor_oracle(a).log_abs) * diag_b +
                           std::exp(det_cofactor_oracle(b).log_abs) * diag_a;
        CHECK(r.lhs_log == doctest::Approx(std::log(lhs)).epsilon(1e-9));
        CHECK(r.rhs_log == doctest::Approx(std::log(rhs)).epsilon(1e-9));
        CHECK(r.margin_log >= -1e-9);
    }
}

TEST_CASE("chen bound") {
    const auto rep = chen_bound(kA, kB, 1e-8);
    CHECK(std::exp(rep.lhs_log) == doctest::Approx(35.0).epsilon(1e-12));
    CHECK(std::exp(rep.rhs_log) == doctest::Approx(35.0).epsilon(1e-12));
    CHECK(std::abs(rep.margin_log) <= 1e-12);
    REQUIRE(rep.terms.size() == 1);
    CHECK(rep.terms[0].mu == 2);
    // Per-factor ratio terms: 4/3 and 9/8.
    CHECK(std::exp(rep.terms[0].ratio_terms[0]) == doctest::Approx(4.0 / 3.0));
    CHECK(std::exp(rep.terms[0].ratio_terms[1]) == doctest::Approx(9.0 / 8.0));

    const auto id = chen_bound(Matrix::identity(3), Matrix::identity(3), 1e-8);
    CHECK(std::abs(id.margin_log) <= 1e-12);

    // PD is required.
    CHECK_THROWS_AS(chen_bound(Matrix{{1.0, 1.0}, {1.0, 1.0}}, kB, 1e-8), Error);
}

TEST_CASE("chen improves on the oppenheim-schur arrangement") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        const std::size_t dim = 2 + seed % 4;
        const Matrix a = pd(seed, dim, ScalarKind::Complex);
        const Matrix b = pd(seed + 90, dim, ScalarKind::Complex);
        const auto chen = chen_bound(a, b, 1e-8);
        const auto schur = oppenheim_schur_ineq(a, b, 1e-8);
        const double det_ab = log_det_pd(a).log_abs + log_det_pd(b).log_abs;
        // chen RHS + det(ab) dominates the schur RHS.
        const std::vector<double> parts{chen.rhs_log, det_ab};
        CHECK(log_sum_exp(parts) >= schur.rhs_log - 1e-9);
    }
}

TEST_CASE("chen margin is invariant under scaling") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        const std::size_t dim = 2 + seed % 3;
        const Matrix a = pd(seed, dim, ScalarKind::Complex);
        const Matrix b = pd(seed + 40, dim, ScalarKind::Complex);
        Rng rng(seed);
        const double c = 0.1 + 9.9 * rng.uniform();
        const auto base = chen_bound(a, b, 1e-8);
        const auto scaled_rep = chen_bound(scaled(a, c), b, 1e-8);
        const double shift = static_cast<double>(dim) * std::log(c);
        CHECK(scaled_rep.lhs_log == doctest::Approx(base.lhs_log + shift).epsilon(1e-12));
        CHECK(scaled_rep.rhs_log == doctest::Approx(base.rhs_log + shift).epsilon(1e-12));
        CHECK(std::abs(scaled_rep.margin_log - base.margin_log) <= 1e-9);
    }
}

TEST_CASE("thm21 reduces to chen and feeds kim") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const std::size_t dim = 2 + seed % 4;
        const Matrix a = pd(seed, dim, ScalarKind::Complex);
        const Matrix b = pd(seed + 70, dim, ScalarKind::Complex);
        const auto block = thm21_bound(as_unit_blocks(a), as_unit_blocks(b), 1e-8);
        const auto dense = chen_bound(a, b, 1e-8);
        CHECK(reports_equal(block, dense));
    }

    const BlockMatrix a = block_pd(5, 3, 2);
    const BlockMatrix b = block_pd(6, 3, 2);
    CHECK(reports_equal(kim_bound(a, b, 1e-8), thm21_bound(a, b, 1e-8)));
    CHECK_THROWS_AS(kim_bound(a, block_pd(7, 3, 3), 1e-8), Error);

    const auto id = thm21_bound(BlockMatrix::identity(3, 2), BlockMatrix::identity(3, 2), 1e-8);
    CHECK(std::abs(id.margin_log) <= 1e-12);

    // Mixed block orders against a brute-force LU evaluation of the left side.
    const BlockMatrix x = block_pd(8, 2, 1);
    const BlockMatrix y = block_pd(9, 2, 2);
    const auto rep = thm21_bound(x, y, 1e-8);
    CHECK(rep.lhs_log == doctest::Approx(det_lu(flatten(khatri_rao(x, y))).log_abs)
                             .epsilon(1e-10));
    CHECK(rep.holds);
}

TEST_CASE("thm24 reduces to thm21 and holds for triples") {
    const BlockMatrix a = block_pd(11, 3, 2);
    const BlockMatrix b = block_pd(12, 3, 3);
    CHECK(reports_equal(thm24_bound({a, b}, 1e-8), thm21_bound(a, b, 1e-8)));

    const auto id = thm24_bound({BlockMatrix::identity(2, 2), BlockMatrix::identity(2, 1),
                                 BlockMatrix::identity(2, 3)},
                                1e-8);
    CHECK(std::abs(id.margin_log) <= 1e-12);

    // m=3 with block orders (1,1,2); left side cross-checked by LU.
    const BlockMatrix f1 = block_pd(13, 2, 1);
    const BlockMatrix f2 = block_pd(14, 2, 1);
    const BlockMatrix f3 = block_pd(15, 2, 2);
    const auto rep = thm24_bound({f1, f2, f3}, 1e-8);
    CHECK(rep.holds);
    CHECK(rep.lhs_log ==
          doctest::Approx(det_lu(flatten(khatri_rao_all({f1, f2, f3}))).log_abs).epsilon(1e-10));
    for (const BoundTerms& t : rep.terms) {
        for (double r : t.ratio_terms) CHECK(r >= -1e-9);
        CHECK(t.r_mu >= -1e-9);
        CHECK(t.s_mu >= -1e-9);
    }

    CHECK_THROWS_AS(thm24_bound({}, 1e-8), Error);
    CHECK_THROWS_AS(
        thm24_bound({a, partition(Matrix(4, 6, std::vector<Scalar>(24, Scalar(0.0, 0.0))), 2, 2,
                                  3)},
                    1e-8),
        Error);
}

TEST_CASE("thm25 arrangements agree and cover the singular boundary") {
    const BlockMatrix a = block_pd(21, 3, 2);
    const BlockMatrix b = block_pd(22, 3, 1);
    const BlockMatrix c = block_pd(23, 3, 2);
    const auto rep = thm25_ineq({a, b, c}, 1e-8);
    CHECK(rep.holds);
    REQUIRE(rep.factored.has_value());
    CHECK(rep.factored->holds);
    REQUIRE(rep.arrangement_gap.has_value());
    CHECK(*rep.arrangement_gap <= 1e-8);

    // All-identity factors: equality in the sum arrangement.
    const auto id = thm25_ineq({BlockMatrix::identity(2, 2), BlockMatrix::identity(2, 2)}, 1e-8);
    CHECK(std::abs(id.margin_log) <= 1e-12);

    // One singular factor: every cross term carrying its determinant drops
    // out, and the inequality still holds.
    GenConfig sing;
    sing.seed = 31;
    sing.dim = 6;
    sing.rank_deficit = 1;
    const BlockMatrix s = partition(random_psd_singular(sing), 3, 2, 2);
    const auto srep = thm25_ineq({s, a}, 1e-8);
    CHECK(srep.holds);
    CHECK_FALSE(srep.factored.has_value());
    CHECK(std::isfinite(srep.rhs_log)); // exactly one surviving cross term

    // Singular diagonal block: the whole right side vanishes.
    Matrix zdiag(4, 4);
    zdiag(0, 0) = Scalar(1.0, 0.0); // block (1,1) = diag(1,0) is singular
    zdiag(2, 2) = Scalar(1.0, 0.0);
    zdiag(3, 3) = Scalar(1.0, 0.0);
    const auto zrep = thm25_ineq({partition(zdiag, 2, 2, 2), block_pd(24, 2, 2)}, 1e-8);
    CHECK(std::isinf(zrep.rhs_log));
    CHECK(zrep.holds);
}

TEST_CASE("coro26 and coro27 reduce to the two-factor bounds") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const std::size_t dim = 2 + seed % 4;
        const Matrix a = pd(seed, dim, ScalarKind::Complex);
        const Matrix b = pd(seed + 30, dim, ScalarKind::Complex);
        CHECK(reports_equal(coro26_bound({a, b}, 1e-8), chen_bound(a, b, 1e-8)));

        const auto c27 = coro27_ineq({a, b}, 1e-8);
        const auto schur = oppenheim_schur_ineq(a, b, 1e-8);
        CHECK(c27.lhs_log == schur.lhs_log);
        CHECK(c27.rhs_log == schur.rhs_log);
        CHECK(c27.margin_log == schur.margin_log);

        const auto t25 = thm25_ineq({as_unit_blocks(a), as_unit_blocks(b)}, 1e-8);
        CHECK(t25.lhs_log == schur.lhs_log);
        CHECK(t25.rhs_log == schur.rhs_log);
    }

    // Triple products against the brute-force oracle.
    const Matrix x = pd(41, 3), y = pd(42, 3), z = pd(43, 3);
    const auto rep = coro26_bound({x, y, z}, 1e-8);
    const double lhs_oracle = det_cofactor_oracle(hadamard(hadamard(x, y), z)).log_abs;
    CHECK(rep.lhs_log == doctest::Approx(lhs_oracle).epsilon(1e-10));
    CHECK(rep.holds);

    const auto all_id =
        coro26_bound({Matrix::identity(3), Matrix::identity(3), Matrix::identity(3)}, 1e-8);
    CHECK(std::abs(all_id.margin_log) <= 1e-12);

    // coro27 admits a singular factor; the vanished determinant zeroes all
    // but one right-side term.
    const Matrix singular{{1.0, 0.0}, {0.0, 0.0}};
    const auto s27 = coro27_ineq({singular, pd(44, 2), pd(45, 2)}, 1e-8);
    CHECK(s27.holds);

    CHECK_THROWS_AS(coro26_bound({x, pd(46, 4)}, 1e-8), Error);
}

TEST_CASE("lemma23 scalar inequality") {
    const auto ones = lemma23_check({{1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}}, 1e-9);
    CHECK(ones.margin_log == doctest::Approx(0.0));
    CHECK(ones.holds);

    const auto worked = lemma23_check({{2.0, 3.0}, {2.0, 2.0}}, 1e-9);
    CHECK(std::exp(worked.lhs_log) == doctest::Approx(12.0));
    CHECK(std::exp(worked.rhs_log) == doctest::Approx(9.0));

    // m == 2 matches the direct two-row evaluation pattern.
    const auto two = lemma23_check({{1.5, 2.5, 4.0}, {3.0, 1.0, 2.0}}, 1e-9);
    const double lhs = (1.5 + 3.0 - 1.0) * (2.5 + 1.0 - 1.0) * (4.0 + 2.0 - 1.0);
    const double rhs = 1.5 * 2.5 * 4.0 + 3.0 * 1.0 * 2.0 - 1.0;
    CHECK(std::exp(two.lhs_log) == doctest::Approx(lhs).epsilon(1e-12));
    CHECK(std::exp(two.rhs_log) == doctest::Approx(rhs).epsilon(1e-12));

    CHECK_THROWS_AS(lemma23_check({{0.5, 2.0}}, 1e-9), Error);
    CHECK_THROWS_AS(lemma23_check({{2.0, 2.0}, {2.0}}, 1e-9), Error);
    CHECK_THROWS_AS(lemma23_check({}, 1e-9), Error);
    CHECK_THROWS_AS(lemma23_check({{2000.0}}, 1e-9), Error);
}

TEST_CASE("coro24 scalar inequality") {
    const auto unit = coro24_check({2.0, 3.0}, 1, 1e-9);
    CHECK(std::abs(unit.margin_log - (std::log(4.0) - std::log(4.0))) <= 1e-12);

    const auto sq = coro24_check({2.0, 3.0}, 2, 1e-9);
    CHECK(std::exp(sq.lhs_log) == doctest::Approx(16.0));
    CHECK(std::exp(sq.rhs_log) == doctest::Approx(12.0));

    const auto ones = coro24_check({1.0, 1.0, 1.0}, 5, 1e-9);
    CHECK(ones.margin_log == doctest::Approx(0.0));

    CHECK_THROWS_AS(coro24_check({0.9}, 2, 1e-9), Error);
    CHECK_THROWS_AS(coro24_check({2.0}, 0, 1e-9), Error);
    CHECK_THROWS_AS(coro24_check({2.0}, 17, 1e-9), Error);
}

namespace {

double cofactor_det(const Matrix& m) {
    return std::exp(det_cofactor_oracle(m).log_abs) * det_cofactor_oracle(m).phase.real();
}

// Direct-arithmetic evaluation of the product-bound right side: cofactor
// determinants, plain pow and multiply, no log-space machinery. Small
// instances only, but an entirely independent route.
double thm24_rhs_direct(const std::vector<BlockMatrix>& factors) {
    const std::size_t m = factors.size();
    const std::size_t n = factors.front().order();
    std::vector<double> exponent(m, 1.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (j != i) exponent[i] *= static_cast<double>(factors[j].block_rows());

    double rhs = 1.0;
    for (std::size_t i = 0; i < m; ++i)
        rhs *= std::pow(cofactor_det(flatten(factors[i])), exponent[i]);
    for (std::size_t mu = 2; mu <= n; ++mu) {
        double factor = -static_cast<double>(m - 1);
        for (std::size_t i = 0; i < m; ++i) {
            const double diag = cofactor_det(diagonal_block(factors[i], mu));
            const double head = cofactor_det(flatten(leading_block_submatrix(factors[i], mu - 1)));
            const double lead = cofactor_det(flatten(leading_block_submatrix(factors[i], mu)));
            factor += std::pow(diag * head / lead, exponent[i]);
        }
        rhs *= factor;
    }
    return rhs;
}

// Same for the sum-bound right side.
double thm25_rhs_direct(const std::vector<BlockMatrix>& factors) {
    const std::size_t m = factors.size();
    const std::size_t n = factors.front().order();
    std::vector<double> exponent(m, 1.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            if (j != i) exponent[i] *= static_cast<double>(factors[j].block_rows());

    double rhs = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double diag_prod = 1.0;
        for (std::size_t mu = 1; mu <= n; ++mu)
            diag_prod *= cofactor_det(diagonal_block(factors[i], mu));
        double term = std::pow(diag_prod, exponent[i]);
        for (std::size_t j = 0; j < m; ++j)
            if (j != i) term *= std::pow(cofactor_det(flatten(factors[j])), exponent[j]);
        rhs += term;
    }
    return rhs;
}

} // namespace

TEST_CASE("product-bound right sides match a direct cofactor evaluation") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        const std::size_t n = 2 + seed % 2;
        const std::size_t m = 2 + seed % 2;
        std::vector<BlockMatrix> factors;
        for (std::size_t i = 0; i < m; ++i)
            factors.push_back(
                block_pd(seed * 10 + i, n, 1 + (seed + i) % 2,
                         seed % 2 ? ScalarKind::Complex : ScalarKind::Real));

        const double direct24 = thm24_rhs_direct(factors);
        const InequalityReport rep24 = thm24_bound(factors, 1e-8);
        CHECK(rep24.rhs_log == doctest::Approx(std::log(direct24)).epsilon(1e-10));

        const double direct25 = thm25_rhs_direct(factors);
        const InequalityReport rep25 = thm25_ineq(factors, 1e-8);
        CHECK(rep25.rhs_log == doctest::Approx(std::log(direct25)).epsilon(1e-10));
    }

    // Scalar specializations against the same direct route.
    const Matrix a = pd(71, 3), b = pd(72, 3), c = pd(73, 3);
    const std::vector<BlockMatrix> unit{as_unit_blocks(a), as_unit_blocks(b), as_unit_blocks(c)};
    CHECK(coro26_bound({a, b, c}, 1e-8).rhs_log ==
          doctest::Approx(std::log(thm24_rhs_direct(unit))).epsilon(1e-10));
    CHECK(coro27_ineq({a, b, c}, 1e-8).rhs_log ==
          doctest::Approx(std::log(thm25_rhs_direct(unit))).epsilon(1e-10));
}

TEST_CASE("perturb_to_pd") {
    const Matrix a = pd(61, 3);
    CHECK(bitwise_equal(perturb_to_pd(a, 0.0), a));

    const Matrix boundary{{1.0, 0.0}, {0.0, 0.0}};
    const Matrix shifted = perturb_to_pd(boundary, 1e-8);
    CHECK(shifted(0, 0).real() == doctest::Approx(1.0 + 2e-8));
    CHECK(shifted(1, 1).real() == doctest::Approx(2e-8));
    CHECK_NOTHROW(cholesky(shifted));

    const Matrix zero(2, 2);
    const Matrix z = perturb_to_pd(zero, 1e-8);
    CHECK(z(0, 0).real() == doctest::Approx(1e-8));

    CHECK_THROWS_AS(perturb_to_pd(Matrix{{0.0, 1.0}, {0.0, 0.0}}, 1e-8), Error);
}
