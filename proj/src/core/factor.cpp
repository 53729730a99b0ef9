#include "core/factor.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace blockdet {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Relative pivot floor below which a PSD factorization counts as singular,
// and the floor below which it counts as indefinite.
constexpr double kPsdSingularFloor = 1e-10;
constexpr double kPsdIndefiniteFloor = 1e-8;

void require_square(const Matrix& a, const char* who) {
    if (!a.is_square())
        throw Error(ErrorCode::NotSquare, std::string(who) + ": matrix must be square");
}

void require_hermitian(const Matrix& a, const char* who) {
    if (!is_hermitian(a, hermitian_tol(a)))
        throw Error(ErrorCode::NotHermitian, std::string(who) + ": matrix is not Hermitian within tolerance");
}

} // namespace

LogDet LogDet::zero() {
    return LogDet{Scalar(0.0, 0.0), kNegInf};
}

bool LogDet::is_zero() const {
    return phase == Scalar(0.0, 0.0);
}

int LogDet::real_sign() const {
    if (is_zero()) return 0;
    if (std::abs(phase.imag()) > 1e-9)
        throw Error(ErrorCode::DomainError, "real_sign: determinant phase is not real");
    return phase.real() >= 0.0 ? 1 : -1;
}

LogDet logdet_mul(const LogDet& a, const LogDet& b) {
    if (a.is_zero() || b.is_zero()) return LogDet::zero();
    return LogDet{a.phase * b.phase, a.log_abs + b.log_abs};
}

LogDet logdet_pow(const LogDet& a, long exponent) {
    if (exponent == 0) return LogDet{};
    if (a.is_zero()) return LogDet::zero();
    if (exponent < 0)
        return LogDet{std::pow(a.phase, static_cast<double>(exponent)),
                      a.log_abs * static_cast<double>(exponent)};
    Scalar phase(1.0, 0.0);
    Scalar base = a.phase;
    long e = exponent;
    while (e > 0) {
        if (e & 1) phase *= base;
        base *= base;
        e >>= 1;
    }
    return LogDet{phase, a.log_abs * static_cast<double>(exponent)};
}

Matrix cholesky(const Matrix& a, double shift) {
    require_square(a, "cholesky");
    require_hermitian(a, "cholesky");
    const Matrix s = symmetrized(a);
    const std::size_t n = s.rows();

    Matrix lower(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = s(j, j).real() + shift;
        for (std::size_t k = 0; k < j; ++k)
            d -= std::norm(lower(j, k));
        if (!(d > 0.0))
            throw Error(ErrorCode::NotPositiveDefinite,
                        "cholesky: pivot " + std::to_string(j) + " is not positive (" +
                            std::to_string(d) + ")");
        const double ljj = std::sqrt(d);
        lower(j, j) = Scalar(ljj, 0.0);
        for (std::size_t i = j + 1; i < n; ++i) {
            Scalar off = s(i, j);
            for (std::size_t k = 0; k < j; ++k)
                off -= lower(i, k) * std::conj(lower(j, k));
            lower(i, j) = off / ljj;
        }
    }
    return lower;
}

LogDet log_det_pd(const Matrix& a) {
    const Matrix lower = cholesky(a, 0.0);
    double acc = 0.0;
    for (std::size_t j = 0; j < lower.rows(); ++j)
        acc += 2.0 * std::log(lower(j, j).real());
    return LogDet{Scalar(1.0, 0.0), acc};
}

std::vector<double> log_det_pd_prefixes(const Matrix& a, const std::vector<std::size_t>& cuts) {
    const Matrix lower = cholesky(a, 0.0);
    for (std::size_t c : cuts)
        if (c < 1 || c > lower.rows())
            throw Error(ErrorCode::IndexOutOfRange, "log_det_pd_prefixes: cut out of range");
    std::vector<double> out;
    out.reserve(cuts.size());
    double acc = 0.0;
    std::size_t row = 0;
    for (std::size_t c : cuts) {
        if (c < row)
            throw Error(ErrorCode::IndexOutOfRange, "log_det_pd_prefixes: cuts must ascend");
        for (; row < c; ++row)
            acc += 2.0 * std::log(lower(row, row).real());
        out.push_back(acc);
    }
    return out;
}

LogDet log_det_psd(const Matrix& a) {
    require_square(a, "log_det_psd");
    require_hermitian(a, "log_det_psd");
    const Matrix s = symmetrized(a);
    const std::size_t n = s.rows();
    const double scale = 1.0 + a.max_abs();

    // Same factorization as cholesky(), but pivots inside the singular band
    // terminate with det == 0 instead of failing.
    Matrix lower(n, n);
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double d = s(j, j).real();
        for (std::size_t k = 0; k < j; ++k)
            d -= std::norm(lower(j, k));
        if (d < -kPsdIndefiniteFloor * scale)
            throw Error(ErrorCode::NotPositiveDefinite,
                        "log_det_psd: matrix is not positive semidefinite within tolerance");
        if (d <= kPsdSingularFloor * scale)
            return LogDet::zero();
        const double ljj = std::sqrt(d);
        acc += 2.0 * std::log(ljj);
        lower(j, j) = Scalar(ljj, 0.0);
        for (std::size_t i = j + 1; i < n; ++i) {
            Scalar off = s(i, j);
            for (std::size_t k = 0; k < j; ++k)
                off -= lower(i, k) * std::conj(lower(j, k));
            lower(i, j) = off / ljj;
        }
    }
    return LogDet{Scalar(1.0, 0.0), acc};
}

LogDet det_lu(const Matrix& a) {
    require_square(a, "det_lu");
    const std::size_t n = a.rows();
    Matrix u = a;

    Scalar phase(1.0, 0.0);
    double log_abs = 0.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot_row = col;
        double best = std::abs(u(col, col));
        for (std::size_t i = col + 1; i < n; ++i) {
            const double mag = std::abs(u(i, col));
            if (mag > best) {
                best = mag;
                pivot_row = i;
            }
        }
        if (best == 0.0) return LogDet::zero();
        if (pivot_row != col) {
            for (std::size_t j = 0; j < n; ++j)
                std::swap(u(col, j), u(pivot_row, j));
            phase = -phase;
        }
        const Scalar pivot = u(col, col);
        phase *= pivot / best;
        log_abs += std::log(best);
        for (std::size_t i = col + 1; i < n; ++i) {
            const Scalar factor = u(i, col) / pivot;
            u(i, col) = Scalar(0.0, 0.0);
            for (std::size_t j = col + 1; j < n; ++j)
                u(i, j) -= factor * u(col, j);
        }
    }
    return LogDet{phase, log_abs};
}

namespace {

Scalar cofactor_expand(const Matrix& a) {
    const std::size_t n = a.rows();
    if (n == 1) return a(0, 0);
    Scalar acc(0.0, 0.0);
    double sign = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
        Matrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t col = 0;
            for (std::size_t k = 0; k < n; ++k) {
                if (k == j) continue;
                minor(i - 1, col++) = a(i, k);
            }
        }
        acc += sign * a(0, j) * cofactor_expand(minor);
        sign = -sign;
    }
    return acc;
}

} // namespace

LogDet det_cofactor_oracle(const Matrix& a) {
    require_square(a, "det_cofactor_oracle");
    if (a.rows() > 8)
        throw Error(ErrorCode::DimensionTooLarge, "det_cofactor_oracle: dimension capped at 8");
    const Scalar det = cofactor_expand(a);
    const double mag = std::abs(det);
    if (mag == 0.0) return LogDet::zero();
    return LogDet{det / mag, std::log(mag)};
}

} // namespace blockdet
