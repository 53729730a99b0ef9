#include "blockdet/blockdet.h"

#include <cstring>
#include <string>

#include "core/bounds.hpp"
#include "core/factor.hpp"
#include "core/generate.hpp"
#include "core/json_io.hpp"
#include "core/suite.hpp"

using namespace blockdet;

struct bd_matrix {
    Matrix value;
};
struct bd_block_matrix {
    BlockMatrix value;
};
struct bd_report {
    InequalityReport value;
};
struct bd_suite_report {
    SuiteReport value;
};

namespace {

thread_local std::string g_last_error;

bd_status status_from_code(ErrorCode code) {
    switch (code) {
    case ErrorCode::DimensionMismatch:   return BD_ERR_DIMENSION_MISMATCH;
    case ErrorCode::NotSquare:           return BD_ERR_NOT_SQUARE;
    case ErrorCode::NotHermitian:        return BD_ERR_NOT_HERMITIAN;
    case ErrorCode::NotPositiveDefinite: return BD_ERR_NOT_POSITIVE_DEFINITE;
    case ErrorCode::NegativeDiagonal:    return BD_ERR_NEGATIVE_DIAGONAL;
    case ErrorCode::IndexOutOfRange:     return BD_ERR_INDEX_OUT_OF_RANGE;
    case ErrorCode::BlockGridMismatch:   return BD_ERR_BLOCK_GRID_MISMATCH;
    case ErrorCode::NonSquareBlocks:     return BD_ERR_NON_SQUARE_BLOCKS;
    case ErrorCode::EmptyFactorList:     return BD_ERR_EMPTY_FACTOR_LIST;
    case ErrorCode::DimensionTooLarge:   return BD_ERR_DIMENSION_TOO_LARGE;
    case ErrorCode::DomainError:         return BD_ERR_DOMAIN;
    case ErrorCode::ParseError:          return BD_ERR_PARSE;
    case ErrorCode::ShapeMismatch:       return BD_ERR_SHAPE_MISMATCH;
    case ErrorCode::ConfigInvalid:       return BD_ERR_CONFIG_INVALID;
    case ErrorCode::NonFiniteEntry:      return BD_ERR_NON_FINITE_ENTRY;
    }
    return BD_ERR_INTERNAL;
}

/// Runs the body, translating exceptions into status codes.
template <typename Fn>
bd_status guarded(Fn&& fn) {
    try {
        fn();
        return BD_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return status_from_code(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return BD_ERR_INTERNAL;
    }
}

bd_status require_args(bool ok) {
    if (!ok) {
        g_last_error = "null argument";
        return BD_ERR_NULL_ARGUMENT;
    }
    return BD_OK;
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

} // namespace

extern "C" {

const char* bd_version(void) { return "0.1.0"; }

const char* bd_status_name(bd_status status) {
    switch (status) {
    case BD_OK:                          return "BD_OK";
    case BD_ERR_DIMENSION_MISMATCH:      return "BD_ERR_DIMENSION_MISMATCH";
    case BD_ERR_NOT_SQUARE:              return "BD_ERR_NOT_SQUARE";
    case BD_ERR_NOT_HERMITIAN:           return "BD_ERR_NOT_HERMITIAN";
    case BD_ERR_NOT_POSITIVE_DEFINITE:   return "BD_ERR_NOT_POSITIVE_DEFINITE";
    case BD_ERR_NEGATIVE_DIAGONAL:       return "BD_ERR_NEGATIVE_DIAGONAL";
    case BD_ERR_INDEX_OUT_OF_RANGE:      return "BD_ERR_INDEX_OUT_OF_RANGE";
    case BD_ERR_BLOCK_GRID_MISMATCH:     return "BD_ERR_BLOCK_GRID_MISMATCH";
    case BD_ERR_NON_SQUARE_BLOCKS:       return "BD_ERR_NON_SQUARE_BLOCKS";
    case BD_ERR_EMPTY_FACTOR_LIST:       return "BD_ERR_EMPTY_FACTOR_LIST";
    case BD_ERR_DIMENSION_TOO_LARGE:     return "BD_ERR_DIMENSION_TOO_LARGE";
    case BD_ERR_DOMAIN:                  return "BD_ERR_DOMAIN";
    case BD_ERR_PARSE:                   return "BD_ERR_PARSE";
    case BD_ERR_SHAPE_MISMATCH:          return "BD_ERR_SHAPE_MISMATCH";
    case BD_ERR_CONFIG_INVALID:          return "BD_ERR_CONFIG_INVALID";
    case BD_ERR_NON_FINITE_ENTRY:        return "BD_ERR_NON_FINITE_ENTRY";
    case BD_ERR_NULL_ARGUMENT:           return "BD_ERR_NULL_ARGUMENT";
    case BD_ERR_INTERNAL:                return "BD_ERR_INTERNAL";
    }
    return "BD_ERR_UNKNOWN";
}

const char* bd_last_error(void) { return g_last_error.c_str(); }

void bd_string_free(char* s) { delete[] s; }

/* ---- dense matrices ---------------------------------------------------- */

bd_status bd_matrix_create(size_t rows, size_t cols, const double* re, const double* im,
                           bd_matrix** out) {
    if (bd_status s = require_args(re && out)) return s;
    return guarded([&] {
        std::vector<Scalar> data(rows * cols);
        for (size_t k = 0; k < rows * cols; ++k)
            data[k] = Scalar(re[k], im ? im[k] : 0.0);
        *out = new bd_matrix{Matrix(rows, cols, std::move(data))};
    });
}

bd_status bd_matrix_from_json(const char* json, bd_matrix** out) {
    if (bd_status s = require_args(json && out)) return s;
    return guarded([&] { *out = new bd_matrix{matrix_from_json(parse_json_text(json))}; });
}

bd_status bd_matrix_to_json(const bd_matrix* m, char** out) {
    if (bd_status s = require_args(m && out)) return s;
    return guarded([&] { *out = dup_string(matrix_to_json(m->value).dump()); });
}

size_t bd_matrix_rows(const bd_matrix* m) { return m ? m->value.rows() : 0; }
size_t bd_matrix_cols(const bd_matrix* m) { return m ? m->value.cols() : 0; }

bd_status bd_matrix_get(const bd_matrix* m, size_t i, size_t j, double* re, double* im) {
    if (bd_status s = require_args(m && re && im)) return s;
    return guarded([&] {
        if (i >= m->value.rows() || j >= m->value.cols())
            throw Error(ErrorCode::IndexOutOfRange, "bd_matrix_get: index out of range");
        *re = m->value(i, j).real();
        *im = m->value(i, j).imag();
    });
}

void bd_matrix_free(bd_matrix* m) { delete m; }

bd_status bd_matrix_conjugate_transpose(const bd_matrix* a, bd_matrix** out) {
    if (bd_status s = require_args(a && out)) return s;
    return guarded([&] { *out = new bd_matrix{conjugate_transpose(a->value)}; });
}

bd_status bd_matrix_matmul(const bd_matrix* a, const bd_matrix* b, bd_matrix** out) {
    if (bd_status s = require_args(a && b && out)) return s;
    return guarded([&] { *out = new bd_matrix{matmul(a->value, b->value)}; });
}

bd_status bd_matrix_kronecker(const bd_matrix* a, const bd_matrix* b, bd_matrix** out) {
    if (bd_status s = require_args(a && b && out)) return s;
    return guarded([&] { *out = new bd_matrix{kronecker(a->value, b->value)}; });
}

bd_status bd_matrix_hadamard(const bd_matrix* a, const bd_matrix* b, bd_matrix** out) {
    if (bd_status s = require_args(a && b && out)) return s;
    return guarded([&] { *out = new bd_matrix{hadamard(a->value, b->value)}; });
}

bd_status bd_matrix_leading_principal(const bd_matrix* a, size_t k, bd_matrix** out) {
    if (bd_status s = require_args(a && out)) return s;
    return guarded([&] { *out = new bd_matrix{leading_principal(a->value, k)}; });
}

bd_status bd_matrix_is_hermitian(const bd_matrix* a, double tol, int* out) {
    if (bd_status s = require_args(a && out)) return s;
    return guarded([&] { *out = is_hermitian(a->value, tol) ? 1 : 0; });
}

bd_status bd_matrix_log_det(const bd_matrix* a, const char* mode, double* phase_re,
                            double* phase_im, double* log_abs) {
    if (bd_status s = require_args(a && mode && phase_re && phase_im && log_abs)) return s;
    return guarded([&] {
        LogDet d;
        const std::string m = mode;
        if (m == "pd")
            d = log_det_pd(a->value);
        else if (m == "lu")
            d = det_lu(a->value);
        else if (m == "cofactor")
            d = det_cofactor_oracle(a->value);
        else
            throw Error(ErrorCode::ConfigInvalid, "bd_matrix_log_det: mode must be pd/lu/cofactor");
        *phase_re = d.phase.real();
        *phase_im = d.phase.imag();
        *log_abs = d.log_abs;
    });
}

bd_status bd_matrix_perturb_to_pd(const bd_matrix* a, double delta, bd_matrix** out) {
    if (bd_status s = require_args(a && out)) return s;
    return guarded([&] { *out = new bd_matrix{perturb_to_pd(a->value, delta)}; });
}

/* ---- block matrices ---------------------------------------------------- */

bd_status bd_block_from_json(const char* json, bd_block_matrix** out) {
    if (bd_status s = require_args(json && out)) return s;
    return guarded(
        [&] { *out = new bd_block_matrix{block_matrix_from_json(parse_json_text(json))}; });
}

bd_status bd_block_to_json(const bd_block_matrix* m, char** out) {
    if (bd_status s = require_args(m && out)) return s;
    return guarded([&] { *out = dup_string(block_matrix_to_json(m->value).dump()); });
}

bd_status bd_block_partition(const bd_matrix* a, size_t n, size_t p, size_t q,
                             bd_block_matrix** out) {
    if (bd_status s = require_args(a && out)) return s;
    return guarded([&] { *out = new bd_block_matrix{partition(a->value, n, p, q)}; });
}

bd_status bd_block_flatten(const bd_block_matrix* m, bd_matrix** out) {
    if (bd_status s = require_args(m && out)) return s;
    return guarded([&] { *out = new bd_matrix{flatten(m->value)}; });
}

bd_status bd_block_khatri_rao(const bd_block_matrix* a, const bd_block_matrix* b,
                              bd_block_matrix** out) {
    if (bd_status s = require_args(a && b && out)) return s;
    return guarded([&] { *out = new bd_block_matrix{khatri_rao(a->value, b->value)}; });
}

size_t bd_block_order(const bd_block_matrix* m) { return m ? m->value.order() : 0; }
size_t bd_block_rows(const bd_block_matrix* m) { return m ? m->value.block_rows() : 0; }
size_t bd_block_cols(const bd_block_matrix* m) { return m ? m->value.block_cols() : 0; }

void bd_block_free(bd_block_matrix* m) { delete m; }

/* ---- seeded generation ------------------------------------------------- */

bd_status bd_gen_pd(uint64_t seed, size_t dim, double cond_cap, int complex_scalars,
                    bd_matrix** out) {
    if (bd_status s = require_args(out != nullptr)) return s;
    return guarded([&] {
        GenConfig cfg;
        cfg.seed = seed;
        cfg.dim = dim;
        cfg.cond_cap = cond_cap;
        cfg.scalar_kind = complex_scalars ? ScalarKind::Complex : ScalarKind::Real;
        *out = new bd_matrix{random_pd(cfg)};
    });
}

bd_status bd_gen_psd_singular(uint64_t seed, size_t dim, size_t rank_deficit,
                              int complex_scalars, bd_matrix** out) {
    if (bd_status s = require_args(out != nullptr)) return s;
    return guarded([&] {
        GenConfig cfg;
        cfg.seed = seed;
        cfg.dim = dim;
        cfg.rank_deficit = rank_deficit;
        cfg.scalar_kind = complex_scalars ? ScalarKind::Complex : ScalarKind::Real;
        *out = new bd_matrix{random_psd_singular(cfg)};
    });
}

bd_status bd_gen_block_pd(uint64_t seed, size_t n, size_t block_dim, double cond_cap,
                          int complex_scalars, bd_block_matrix** out) {
    if (bd_status s = require_args(out != nullptr)) return s;
    return guarded([&] {
        GenConfig cfg;
        cfg.seed = seed;
        cfg.n = n;
        cfg.block_dim = block_dim;
        cfg.cond_cap = cond_cap;
        cfg.scalar_kind = complex_scalars ? ScalarKind::Complex : ScalarKind::Real;
        *out = new bd_block_matrix{random_block_pd(cfg)};
    });
}

bd_status bd_gen_ge1_array(uint64_t seed, size_t m, size_t n, double cap, char** out_json) {
    if (bd_status s = require_args(out_json != nullptr)) return s;
    return guarded([&] {
        *out_json = dup_string(ge1_array_to_json(random_ge1_array(seed, m, n, cap)).dump());
    });
}

/* ---- bound evaluation -------------------------------------------------- */

const char* const* bd_bound_names(void) {
    static const char* const names[] = {"hadamard", "fischer", "oppenheim", "oppenheim_schur",
                                        "chen",     "kim",     "thm21",     "thm24",
                                        "thm25",    "coro26",  "coro27",    "lemma23",
                                        "coro24",   nullptr};
    return names;
}

bd_status bd_bound_eval(const char* name, const char* const* input_jsons, size_t n_inputs,
                        long extra_arg, double tol, bd_report** out) {
    if (bd_status s = require_args(name && out && (n_inputs == 0 || input_jsons))) return s;
    return guarded([&] {
        Instance inst;
        inst.bound = name;
        inst.tol = tol >= 0.0 ? tol : kDefaultTol;
        for (size_t i = 0; i < n_inputs; ++i) {
            const Json j = parse_json_text(input_jsons[i]);
            if (j.is_object() && j.contains("blocks"))
                inst.blocks.push_back(block_matrix_from_json(j));
            else if (j.is_object() && j.contains("entries"))
                inst.matrices.push_back(matrix_from_json(j));
            else
                inst.values = ge1_array_from_json(j);
        }
        if (inst.bound == "coro24") {
            inst.power = extra_arg;
            // Accept both a 1 x m row and a bare list serialized as one row.
            if (inst.values.size() > 1)
                throw Error(ErrorCode::ShapeMismatch, "coro24: expected a single row of values");
        }
        if (inst.bound == "fischer")
            inst.split = static_cast<size_t>(extra_arg > 0 ? extra_arg : 0);
        *out = new bd_report{evaluate_instance(inst)};
    });
}

bd_status bd_replay(const char* instance_json, const char* bound_override, double tol_override,
                    bd_report** out) {
    if (bd_status s = require_args(instance_json && out)) return s;
    return guarded([&] {
        *out = new bd_report{replay_instance(parse_json_text(instance_json),
                                             bound_override ? bound_override : "", tol_override)};
    });
}

bd_status bd_report_to_json(const bd_report* r, char** out) {
    if (bd_status s = require_args(r && out)) return s;
    return guarded([&] { *out = dup_string(report_to_json(r->value).dump()); });
}

double bd_report_lhs_log(const bd_report* r) { return r->value.lhs_log; }
double bd_report_rhs_log(const bd_report* r) { return r->value.rhs_log; }
double bd_report_margin_log(const bd_report* r) { return r->value.margin_log; }
int bd_report_holds(const bd_report* r) { return r->value.holds ? 1 : 0; }
void bd_report_free(bd_report* r) { delete r; }

/* ---- verification suite ------------------------------------------------ */

bd_status bd_suite_run(const char* config_json, bd_suite_report** out) {
    if (bd_status s = require_args(config_json && out)) return s;
    return guarded([&] {
        const SuiteConfig cfg = suite_config_from_json(parse_json_text(config_json));
        *out = new bd_suite_report{run_suite(cfg)};
    });
}

bd_status bd_suite_report_to_json(const bd_suite_report* r, char** out) {
    if (bd_status s = require_args(r && out)) return s;
    return guarded([&] { *out = dup_string(suite_report_to_json(r->value).dump()); });
}

size_t bd_suite_violations(const bd_suite_report* r) {
    return r ? r->value.total_violations : 0;
}

void bd_suite_report_free(bd_suite_report* r) { delete r; }

bd_status bd_reductions_run(const char* config_json, char** out_json, int* all_pass) {
    if (bd_status s = require_args(config_json && out_json && all_pass)) return s;
    return guarded([&] {
        const SuiteConfig cfg = suite_config_from_json(parse_json_text(config_json));
        const ReductionsReport rep = check_reductions(cfg);
        *out_json = dup_string(reductions_report_to_json(rep).dump());
        *all_pass = rep.all_pass ? 1 : 0;
    });
}

} // extern "C"
