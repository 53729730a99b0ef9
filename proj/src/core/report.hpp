#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace blockdet {

/// Per-mu diagnostics of a product bound (mu runs 2..n). ratio_terms holds,
/// per factor, the log of (det A_mumu * det A_{mu-1} / det A_mu) raised to
/// its integer exponent; each is >= 0 up to rounding. r_mu and s_mu are the
/// logs of the two quantities the inductive proof splits the mu-factor into;
/// both are >= 0 up to rounding as well.
struct BoundTerms {
    std::size_t mu = 0;
    std::vector<double> ratio_terms;
    double r_mu = 0.0;
    double s_mu = 0.0;
};

/// One link of a chained inequality (lhs >= rhs in log space).
struct ChainLink {
    std::string name;
    double lhs_log = 0.0;
    double rhs_log = 0.0;
    double margin_log = 0.0;
    bool holds = false;
};

/// Secondary reading of the same bound (used by the sum-form bounds, which
/// also evaluate the equivalent factored form on definite input).
struct Arrangement {
    double lhs_log = 0.0;
    double rhs_log = 0.0;
    double margin_log = 0.0;
    bool holds = false;
};

/// One bound evaluation. margin_log == lhs_log - rhs_log with the zero
/// conventions of margin_from(); holds <=> margin_log >= -tol.
struct InequalityReport {
    std::string name;
    double lhs_log = 0.0;
    double rhs_log = 0.0;
    double margin_log = 0.0;
    bool holds = false;
    double tol = 0.0;
    std::vector<BoundTerms> terms;
    std::vector<ChainLink> links;
    std::optional<Arrangement> factored;
    /// |direct - recombined| gap between the two algebraic routes to the
    /// sum-form right side; only set when both were evaluated.
    std::optional<double> arrangement_gap;
};

inline constexpr double kNegInfinity = -std::numeric_limits<double>::infinity();
inline constexpr double kPosInfinity = std::numeric_limits<double>::infinity();

/// lhs_log - rhs_log with the conventions for zero determinants:
/// (-inf) - (-inf) == 0 (both sides vanish, equality) and
/// finite - (-inf) == +inf.
inline double margin_from(double lhs_log, double rhs_log) {
    if (std::isinf(rhs_log) && rhs_log < 0.0)
        return (std::isinf(lhs_log) && lhs_log < 0.0) ? 0.0 : kPosInfinity;
    return lhs_log - rhs_log;
}

} // namespace blockdet
