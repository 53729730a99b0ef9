#include "core/bounds.hpp"

#include <cmath>
#include <string>

#include "core/logsum.hpp"

namespace blockdet {

namespace {

constexpr double kDiagZeroTol = 1e-10; // relative band around zero for PSD diagonals
constexpr double kScalarCap = 1e3;     // entry cap for the scalar inequalities
constexpr long kMaxScalarPower = 16;

void require_hermitian_input(const Matrix& a, const char* who) {
    if (!a.is_square())
        throw Error(ErrorCode::NotSquare, std::string(who) + ": matrix must be square");
    if (!is_hermitian(a, hermitian_tol(a)))
        throw Error(ErrorCode::NotHermitian,
                    std::string(who) + ": matrix is not Hermitian within tolerance");
}

/// Sum of log diagonal entries of a Hermitian PSD matrix. Entries inside the
/// zero band give -inf; entries below it are rejected.
double diag_log_sum(const Matrix& a, const char* who) {
    const double band = kDiagZeroTol * (1.0 + a.max_abs());
    double acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const double d = a(i, i).real();
        if (d < -band)
            throw Error(ErrorCode::NegativeDiagonal,
                        std::string(who) + ": diagonal entry " + std::to_string(i) +
                            " is negative");
        if (d <= band) return kNegInfinity;
        acc += std::log(d);
    }
    return acc;
}

/// Strict PD log det with an LU fallback for assembled products whose
/// conditioning pushes a mathematically positive pivot below rounding noise.
double product_log_det(const Matrix& a) {
    try {
        return log_det_pd(a).log_abs;
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NotPositiveDefinite) throw;
    }
    const LogDet d = det_lu(a);
    if (d.is_zero() || d.phase.real() <= 0.0) return kNegInfinity;
    return d.log_abs;
}

std::vector<double> product_lead_log_dets(const Matrix& flat,
                                          const std::vector<std::size_t>& cuts) {
    try {
        return log_det_pd_prefixes(flat, cuts);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NotPositiveDefinite) throw;
    }
    std::vector<double> out;
    out.reserve(cuts.size());
    for (std::size_t c : cuts)
        out.push_back(product_log_det(leading_principal(flat, c)));
    return out;
}

ChainLink make_link(std::string name, double lhs, double rhs, double tol) {
    ChainLink link;
    link.name = std::move(name);
    link.lhs_log = lhs;
    link.rhs_log = rhs;
    link.margin_log = margin_from(lhs, rhs);
    link.holds = link.margin_log >= -tol;
    return link;
}

InequalityReport chain_report(std::string name, std::vector<ChainLink> links, double tol) {
    InequalityReport rep;
    rep.name = std::move(name);
    rep.tol = tol;
    std::size_t tightest = 0;
    for (std::size_t i = 1; i < links.size(); ++i)
        if (links[i].margin_log < links[tightest].margin_log) tightest = i;
    rep.lhs_log = links[tightest].lhs_log;
    rep.rhs_log = links[tightest].rhs_log;
    rep.margin_log = links[tightest].margin_log;
    rep.holds = true;
    for (const ChainLink& l : links) rep.holds = rep.holds && l.holds;
    rep.links = std::move(links);
    return rep;
}

/// Everything the product/sum bounds need from one factor.
struct FactorAnalysis {
    std::size_t block_dim = 0;
    unsigned long long exponent = 1; // product of the other factors' block dims
    std::vector<double> lead;        // lead[mu] = log det of the mu-block corner, lead[0] == 0
    std::vector<double> diag;        // diag[mu] = log det of diagonal block mu (1-based)

    double full_log_det() const { return lead.back(); }
    double ratio_log(std::size_t mu) const { return diag[mu] + lead[mu - 1] - lead[mu]; }
    double diag_prod_log() const {
        double acc = 0.0;
        for (std::size_t mu = 1; mu < diag.size(); ++mu) acc += diag[mu];
        return acc;
    }
};

std::size_t validate_factors(const std::vector<BlockMatrix>& factors, const char* who) {
    if (factors.empty())
        throw Error(ErrorCode::EmptyFactorList, std::string(who) + ": factor list is empty");
    const std::size_t n = factors.front().order();
    for (const BlockMatrix& f : factors) {
        if (f.order() != n)
            throw Error(ErrorCode::BlockGridMismatch,
                        std::string(who) + ": factors must share one block-grid order");
        if (!f.square_blocks())
            throw Error(ErrorCode::NonSquareBlocks,
                        std::string(who) + ": blocks must be square");
    }
    return n;
}

std::vector<unsigned long long> factor_exponents(const std::vector<BlockMatrix>& factors,
                                                 const char* who) {
    std::vector<unsigned long long> exps(factors.size(), 1ULL);
    for (std::size_t i = 0; i < factors.size(); ++i)
        for (std::size_t j = 0; j < factors.size(); ++j) {
            if (i == j) continue;
            const unsigned long long q = factors[j].block_rows();
            if (exps[i] > (1ULL << 62) / q)
                throw Error(ErrorCode::DomainError,
                            std::string(who) + ": block-dimension product overflows");
            exps[i] *= q;
        }
    return exps;
}

std::vector<std::size_t> block_cuts(std::size_t n, std::size_t p) {
    std::vector<std::size_t> cuts(n);
    for (std::size_t mu = 1; mu <= n; ++mu) cuts[mu - 1] = mu * p;
    return cuts;
}

/// PD analysis: every determinant via strict Cholesky.
FactorAnalysis analyze_pd(const BlockMatrix& f, unsigned long long exponent, const char* who) {
    const Matrix flat = flatten(f);
    require_hermitian_input(flat, who);
    FactorAnalysis out;
    out.block_dim = f.block_rows();
    out.exponent = exponent;
    const std::vector<double> lead = log_det_pd_prefixes(flat, block_cuts(f.order(), f.block_rows()));
    out.lead.assign(1, 0.0);
    out.lead.insert(out.lead.end(), lead.begin(), lead.end());
    out.diag.assign(1, 0.0);
    for (std::size_t mu = 1; mu <= f.order(); ++mu)
        out.diag.push_back(log_det_pd(diagonal_block(f, mu)).log_abs);
    return out;
}

/// PSD analysis: zero determinants are represented as -inf.
FactorAnalysis analyze_psd(const BlockMatrix& f, unsigned long long exponent, const char* who) {
    const Matrix flat = flatten(f);
    require_hermitian_input(flat, who);
    FactorAnalysis out;
    out.block_dim = f.block_rows();
    out.exponent = exponent;
    out.lead.assign(1, 0.0);
    for (std::size_t mu = 1; mu <= f.order(); ++mu)
        out.lead.push_back(log_det_psd(flatten(leading_block_submatrix(f, mu))).log_abs);
    out.diag.assign(1, 0.0);
    for (std::size_t mu = 1; mu <= f.order(); ++mu)
        out.diag.push_back(log_det_psd(diagonal_block(f, mu)).log_abs);
    return out;
}

/// Khatri-Rao fold that also returns the product of all factors but the last
/// (meaningful for m >= 2), which the per-mu diagnostics need.
BlockMatrix fold_khatri_rao(const std::vector<BlockMatrix>& factors, BlockMatrix* prefix_out) {
    BlockMatrix acc = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) {
        if (i + 1 == factors.size() && prefix_out) *prefix_out = acc;
        acc = khatri_rao(acc, factors[i]);
    }
    if (factors.size() == 1 && prefix_out) *prefix_out = acc;
    return acc;
}

InequalityReport eval_product_bound(std::string name, const std::vector<BlockMatrix>& factors,
                                    double tol) {
    const char* who = name.c_str();
    const std::size_t n = validate_factors(factors, who);
    const std::size_t m = factors.size();
    const std::vector<unsigned long long> exps = factor_exponents(factors, who);

    std::vector<FactorAnalysis> fa;
    fa.reserve(m);
    for (std::size_t i = 0; i < m; ++i)
        fa.push_back(analyze_pd(factors[i], exps[i], who));

    BlockMatrix prefix = factors.front();
    const BlockMatrix product = fold_khatri_rao(factors, &prefix);
    const double lhs = product_log_det(flatten(product));

    // Leading determinants of the all-but-last product, for the split
    // diagnostics of the inductive step.
    std::vector<double> prefix_lead{0.0};
    std::vector<double> prefix_diag{0.0};
    if (m >= 2 && n >= 2) {
        const Matrix prefix_flat = flatten(prefix);
        const auto lead = product_lead_log_dets(prefix_flat,
                                                block_cuts(n, prefix.block_rows()));
        prefix_lead.insert(prefix_lead.end(), lead.begin(), lead.end());
        for (std::size_t mu = 1; mu <= n; ++mu)
            prefix_diag.push_back(product_log_det(diagonal_block(prefix, mu)));
    }

    double rhs = 0.0;
    for (const FactorAnalysis& f : fa)
        rhs += static_cast<double>(f.exponent) * f.full_log_det();

    InequalityReport rep;
    rep.name = std::move(name);
    rep.tol = tol;
    const unsigned long long last_dim = factors.back().block_rows();
    for (std::size_t mu = 2; mu <= n; ++mu) {
        BoundTerms bt;
        bt.mu = mu;
        for (const FactorAnalysis& f : fa)
            bt.ratio_terms.push_back(static_cast<double>(f.exponent) * f.ratio_log(mu));
        rhs += log_sum_exp_minus(bt.ratio_terms, static_cast<double>(m - 1));

        if (m >= 2) {
            // r_mu: the first m-1 factors' combined mu-term raised to the last
            // block dimension; s_mu: the two-factor term of (prefix, last).
            // The inner exponents are again products of the other block dims,
            // restricted to the first m-1 factors.
            std::vector<double> head;
            for (std::size_t i = 0; i + 1 < m; ++i) {
                unsigned long long inner_exp = 1;
                for (std::size_t j = 0; j + 1 < m; ++j)
                    if (j != i) inner_exp *= factors[j].block_rows();
                head.push_back(static_cast<double>(inner_exp) * fa[i].ratio_log(mu));
            }
            bt.r_mu = static_cast<double>(last_dim) *
                      log_sum_exp_minus(head, static_cast<double>(m - 2));
            const double prefix_ratio = prefix_diag[mu] + prefix_lead[mu - 1] - prefix_lead[mu];
            const std::vector<double> split{static_cast<double>(last_dim) * prefix_ratio,
                                            static_cast<double>(fa.back().exponent) *
                                                fa.back().ratio_log(mu)};
            bt.s_mu = log_sum_exp_minus(split, 1.0);
        }
        rep.terms.push_back(std::move(bt));
    }

    rep.lhs_log = lhs;
    rep.rhs_log = rhs;
    rep.margin_log = margin_from(lhs, rhs);
    rep.holds = rep.margin_log >= -tol;
    return rep;
}

InequalityReport eval_sum_bound(std::string name, const std::vector<BlockMatrix>& factors,
                                double tol) {
    const char* who = name.c_str();
    validate_factors(factors, who);
    const std::size_t m = factors.size();
    const std::vector<unsigned long long> exps = factor_exponents(factors, who);

    std::vector<FactorAnalysis> fa;
    fa.reserve(m);
    for (std::size_t i = 0; i < m; ++i)
        fa.push_back(analyze_psd(factors[i], exps[i], who));

    const BlockMatrix product = fold_khatri_rao(factors, nullptr);
    const double product_det = product_log_det(flatten(product));

    double scaled_dets = 0.0; // log of prod_i (det A^(i))^{Q/q_i}
    for (const FactorAnalysis& f : fa)
        scaled_dets += static_cast<double>(f.exponent) * f.full_log_det();

    std::vector<double> cross_terms(m);
    for (std::size_t i = 0; i < m; ++i) {
        double t = static_cast<double>(fa[i].exponent) * fa[i].diag_prod_log();
        for (std::size_t j = 0; j < m; ++j)
            if (j != i) t += static_cast<double>(fa[j].exponent) * fa[j].full_log_det();
        cross_terms[i] = t;
    }

    const double weight = m >= 2 ? std::log(static_cast<double>(m - 1)) : kNegInfinity;
    const std::vector<double> lhs_parts{product_det, weight + scaled_dets};
    const double lhs = log_sum_exp(lhs_parts);
    const double rhs = log_sum_exp(cross_terms);

    InequalityReport rep;
    rep.name = std::move(name);
    rep.tol = tol;
    rep.lhs_log = lhs;
    rep.rhs_log = rhs;
    rep.margin_log = margin_from(lhs, rhs);
    rep.holds = rep.margin_log >= -tol;

    bool all_definite = true;
    for (const FactorAnalysis& f : fa)
        all_definite = all_definite && std::isfinite(f.full_log_det());
    if (all_definite) {
        std::vector<double> inner(m);
        for (std::size_t i = 0; i < m; ++i)
            inner[i] = static_cast<double>(fa[i].exponent) *
                       (fa[i].diag_prod_log() - fa[i].full_log_det());
        const double factored_rhs =
            scaled_dets + log_sum_exp_minus(inner, static_cast<double>(m - 1));
        Arrangement alt;
        alt.lhs_log = product_det;
        alt.rhs_log = factored_rhs;
        alt.margin_log = margin_from(alt.lhs_log, alt.rhs_log);
        alt.holds = alt.margin_log >= -tol;
        rep.factored = alt;

        const std::vector<double> recombined{factored_rhs, weight + scaled_dets};
        rep.arrangement_gap = std::abs(rhs - log_sum_exp(recombined));
    }
    return rep;
}

} // namespace

BlockMatrix as_unit_blocks(const Matrix& a) {
    if (!a.is_square())
        throw Error(ErrorCode::NotSquare, "bound input: matrix must be square");
    return partition(a, a.rows(), 1, 1);
}

InequalityReport hadamard_ineq(const Matrix& a, double tol) {
    require_hermitian_input(a, "hadamard");
    const double lhs = diag_log_sum(a, "hadamard");
    const double rhs = log_det_psd(a).log_abs;
    InequalityReport rep;
    rep.name = "hadamard";
    rep.tol = tol;
    rep.lhs_log = lhs;
    rep.rhs_log = rhs;
    rep.margin_log = margin_from(lhs, rhs);
    rep.holds = rep.margin_log >= -tol;
    return rep;
}

InequalityReport fischer_ineq(const Matrix& a, std::size_t split_row, double tol) {
    require_hermitian_input(a, "fischer");
    if (split_row < 1 || split_row >= a.rows())
        throw Error(ErrorCode::IndexOutOfRange, "fischer: split must be in [1, dim)");
    const double diag_log = diag_log_sum(a, "fischer");
    const double corner1 = log_det_psd(leading_principal(a, split_row)).log_abs;
    const double corner2 = log_det_psd(principal_range(a, split_row, a.rows())).log_abs;
    const double split_log = corner1 + corner2;
    const double full_log = log_det_psd(a).log_abs;

    std::vector<ChainLink> links;
    links.push_back(make_link("diagonal_vs_split", diag_log, split_log, tol));
    links.push_back(make_link("split_vs_full", split_log, full_log, tol));
    return chain_report("fischer", std::move(links), tol);
}

InequalityReport oppenheim_ineq(const Matrix& a, const Matrix& b, double tol) {
    if (!same_shape(a, b))
        throw Error(ErrorCode::DimensionMismatch, "oppenheim: matrices must have equal shape");
    require_hermitian_input(a, "oppenheim");
    require_hermitian_input(b, "oppenheim");
    const double had_log = log_det_psd(hadamard(a, b)).log_abs;
    const double det_a = log_det_psd(a).log_abs;
    const double det_b = log_det_psd(b).log_abs;
    const double mixed_log = det_a + diag_log_sum(b, "oppenheim");
    const double prod_log = det_a + det_b;

    std::vector<ChainLink> links;
    links.push_back(make_link("hadamard_vs_diag_scaled", had_log, mixed_log, tol));
    links.push_back(make_link("diag_scaled_vs_product", mixed_log, prod_log, tol));
    return chain_report("oppenheim", std::move(links), tol);
}

InequalityReport oppenheim_schur_ineq(const Matrix& a, const Matrix& b, double tol) {
    if (!same_shape(a, b))
        throw Error(ErrorCode::DimensionMismatch,
                    "oppenheim_schur: matrices must have equal shape");
    return eval_sum_bound("oppenheim_schur", {as_unit_blocks(a), as_unit_blocks(b)}, tol);
}

InequalityReport chen_bound(const Matrix& a, const Matrix& b, double tol) {
    if (!same_shape(a, b))
        throw Error(ErrorCode::DimensionMismatch, "chen: matrices must have equal shape");
    return eval_product_bound("chen", {as_unit_blocks(a), as_unit_blocks(b)}, tol);
}

InequalityReport thm21_bound(const BlockMatrix& a, const BlockMatrix& b, double tol) {
    return eval_product_bound("thm21", {a, b}, tol);
}

InequalityReport kim_bound(const BlockMatrix& a, const BlockMatrix& b, double tol) {
    if (a.block_rows() != b.block_rows() || a.block_cols() != b.block_cols())
        throw Error(ErrorCode::DimensionMismatch,
                    "kim: both factors must share one block order");
    return eval_product_bound("kim", {a, b}, tol);
}

InequalityReport thm24_bound(const std::vector<BlockMatrix>& factors, double tol) {
    return eval_product_bound("thm24", factors, tol);
}

InequalityReport thm25_ineq(const std::vector<BlockMatrix>& factors, double tol) {
    return eval_sum_bound("thm25", factors, tol);
}

InequalityReport coro26_bound(const std::vector<Matrix>& factors, double tol) {
    std::vector<BlockMatrix> wrapped;
    wrapped.reserve(factors.size());
    for (const Matrix& f : factors) {
        if (!same_shape(f, factors.front()))
            throw Error(ErrorCode::DimensionMismatch, "coro26: factors must have equal shape");
        wrapped.push_back(as_unit_blocks(f));
    }
    return eval_product_bound("coro26", wrapped, tol);
}

InequalityReport coro27_ineq(const std::vector<Matrix>& factors, double tol) {
    std::vector<BlockMatrix> wrapped;
    wrapped.reserve(factors.size());
    for (const Matrix& f : factors) {
        if (!same_shape(f, factors.front()))
            throw Error(ErrorCode::DimensionMismatch, "coro27: factors must have equal shape");
        wrapped.push_back(as_unit_blocks(f));
    }
    return eval_sum_bound("coro27", wrapped, tol);
}

InequalityReport lemma23_check(const std::vector<std::vector<double>>& rows, double tol) {
    if (rows.empty() || rows.front().empty())
        throw Error(ErrorCode::ShapeMismatch, "lemma23: array must be non-empty");
    const std::size_t n = rows.front().size();
    for (const auto& row : rows) {
        if (row.size() != n)
            throw Error(ErrorCode::ShapeMismatch, "lemma23: rows must have equal length");
        for (double v : row) {
            if (!(v >= 1.0))
                throw Error(ErrorCode::DomainError, "lemma23: entries must be >= 1");
            if (v > kScalarCap)
                throw Error(ErrorCode::DomainError, "lemma23: entries are capped at 1e3");
        }
    }
    const std::size_t m = rows.size();

    double lhs_val = 1.0;
    for (std::size_t mu = 0; mu < n; ++mu) {
        double col = 0.0;
        for (std::size_t i = 0; i < m; ++i) col += rows[i][mu];
        lhs_val *= col - static_cast<double>(m - 1);
    }
    double rhs_val = -static_cast<double>(m - 1);
    for (std::size_t i = 0; i < m; ++i) {
        double prod = 1.0;
        for (std::size_t mu = 0; mu < n; ++mu) prod *= rows[i][mu];
        rhs_val += prod;
    }

    InequalityReport rep;
    rep.name = "lemma23";
    rep.tol = tol;
    rep.lhs_log = std::log(lhs_val);
    rep.rhs_log = std::log(rhs_val);
    rep.margin_log = margin_from(rep.lhs_log, rep.rhs_log);
    rep.holds = rep.margin_log >= -tol;
    return rep;
}

InequalityReport coro24_check(const std::vector<double>& values, long q, double tol) {
    if (values.empty())
        throw Error(ErrorCode::ShapeMismatch, "coro24: array must be non-empty");
    if (q < 1 || q > kMaxScalarPower)
        throw Error(ErrorCode::DomainError, "coro24: power must be an integer in 1..16");
    for (double v : values) {
        if (!(v >= 1.0))
            throw Error(ErrorCode::DomainError, "coro24: entries must be >= 1");
        if (v > kScalarCap)
            throw Error(ErrorCode::DomainError, "coro24: entries are capped at 1e3");
    }
    const std::size_t m = values.size();

    double base = -static_cast<double>(m - 1);
    for (double v : values) base += v;
    const double lhs_val = std::pow(base, static_cast<double>(q));
    double rhs_val = -static_cast<double>(m - 1);
    for (double v : values) rhs_val += std::pow(v, static_cast<double>(q));

    InequalityReport rep;
    rep.name = "coro24";
    rep.tol = tol;
    rep.lhs_log = std::log(lhs_val);
    rep.rhs_log = std::log(rhs_val);
    rep.margin_log = margin_from(rep.lhs_log, rep.rhs_log);
    rep.holds = rep.margin_log >= -tol;
    return rep;
}

Matrix perturb_to_pd(const Matrix& a, double delta) {
    require_hermitian_input(a, "perturb_to_pd");
    if (delta < 0.0)
        throw Error(ErrorCode::DomainError, "perturb_to_pd: delta must be non-negative");
    return add_diagonal(a, delta * (1.0 + a.max_abs()));
}

} // namespace blockdet
