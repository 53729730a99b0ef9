/* blockdet: determinant inequalities for Kronecker, Hadamard and Khatri-Rao
 * products of (block) positive semidefinite matrices.
 *
 * C API over the C++ core. All objects are opaque handles owned by the
 * library; every function that can fail returns a bd_status, and a
 * human-readable description of the most recent failure on the calling
 * thread is available from bd_last_error(). Strings returned through char**
 * out-parameters are owned by the caller and released with bd_string_free().
 *
 * Matrices, reports and configurations cross the boundary as JSON documents
 * in the formats described in the project README; doubles round-trip
 * bit-exactly.
 */
#ifndef BLOCKDET_H
#define BLOCKDET_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum bd_status {
    BD_OK = 0,
    BD_ERR_DIMENSION_MISMATCH = 1,
    BD_ERR_NOT_SQUARE = 2,
    BD_ERR_NOT_HERMITIAN = 3,
    BD_ERR_NOT_POSITIVE_DEFINITE = 4,
    BD_ERR_NEGATIVE_DIAGONAL = 5,
    BD_ERR_INDEX_OUT_OF_RANGE = 6,
    BD_ERR_BLOCK_GRID_MISMATCH = 7,
    BD_ERR_NON_SQUARE_BLOCKS = 8,
    BD_ERR_EMPTY_FACTOR_LIST = 9,
    BD_ERR_DIMENSION_TOO_LARGE = 10,
    BD_ERR_DOMAIN = 11,
    BD_ERR_PARSE = 12,
    BD_ERR_SHAPE_MISMATCH = 13,
    BD_ERR_CONFIG_INVALID = 14,
    BD_ERR_NON_FINITE_ENTRY = 15,
    BD_ERR_NULL_ARGUMENT = 16,
    BD_ERR_INTERNAL = 17
} bd_status;

typedef struct bd_matrix bd_matrix;
typedef struct bd_block_matrix bd_block_matrix;
typedef struct bd_report bd_report;
typedef struct bd_suite_report bd_suite_report;

const char* bd_version(void);
const char* bd_status_name(bd_status status);

/* Message for the most recent failure on this thread; valid until the next
 * failing call on the same thread. */
const char* bd_last_error(void);

void bd_string_free(char* s);

/* ---- dense matrices ---------------------------------------------------- */

/* re points at rows*cols row-major values; im may be NULL for a real matrix. */
bd_status bd_matrix_create(size_t rows, size_t cols, const double* re, const double* im,
                           bd_matrix** out);
bd_status bd_matrix_from_json(const char* json, bd_matrix** out);
bd_status bd_matrix_to_json(const bd_matrix* m, char** out);
size_t bd_matrix_rows(const bd_matrix* m);
size_t bd_matrix_cols(const bd_matrix* m);
bd_status bd_matrix_get(const bd_matrix* m, size_t i, size_t j, double* re, double* im);
void bd_matrix_free(bd_matrix* m);

bd_status bd_matrix_conjugate_transpose(const bd_matrix* a, bd_matrix** out);
bd_status bd_matrix_matmul(const bd_matrix* a, const bd_matrix* b, bd_matrix** out);
bd_status bd_matrix_kronecker(const bd_matrix* a, const bd_matrix* b, bd_matrix** out);
bd_status bd_matrix_hadamard(const bd_matrix* a, const bd_matrix* b, bd_matrix** out);
bd_status bd_matrix_leading_principal(const bd_matrix* a, size_t k, bd_matrix** out);
bd_status bd_matrix_is_hermitian(const bd_matrix* a, double tol, int* out);

/* Determinants as phase + log magnitude. mode: "pd" (Cholesky, Hermitian
 * positive definite only), "lu" (any square matrix), "cofactor" (brute-force
 * oracle, order <= 8). A zero determinant reports phase (0,0) and
 * log_abs -inf. */
bd_status bd_matrix_log_det(const bd_matrix* a, const char* mode, double* phase_re,
                            double* phase_im, double* log_abs);

/* a + delta*(1+max|a|)*I for Hermitian a. */
bd_status bd_matrix_perturb_to_pd(const bd_matrix* a, double delta, bd_matrix** out);

/* ---- block matrices ---------------------------------------------------- */

bd_status bd_block_from_json(const char* json, bd_block_matrix** out);
bd_status bd_block_to_json(const bd_block_matrix* m, char** out);
bd_status bd_block_partition(const bd_matrix* a, size_t n, size_t p, size_t q,
                             bd_block_matrix** out);
bd_status bd_block_flatten(const bd_block_matrix* m, bd_matrix** out);
bd_status bd_block_khatri_rao(const bd_block_matrix* a, const bd_block_matrix* b,
                              bd_block_matrix** out);
size_t bd_block_order(const bd_block_matrix* m);
size_t bd_block_rows(const bd_block_matrix* m);
size_t bd_block_cols(const bd_block_matrix* m);
void bd_block_free(bd_block_matrix* m);

/* ---- seeded generation ------------------------------------------------- */

/* complex_scalars: 0 for real entries, nonzero for complex. */
bd_status bd_gen_pd(uint64_t seed, size_t dim, double cond_cap, int complex_scalars,
                    bd_matrix** out);
bd_status bd_gen_psd_singular(uint64_t seed, size_t dim, size_t rank_deficit,
                              int complex_scalars, bd_matrix** out);
bd_status bd_gen_block_pd(uint64_t seed, size_t n, size_t block_dim, double cond_cap,
                          int complex_scalars, bd_block_matrix** out);
/* JSON array of m rows of n entries, uniform in [1, cap]. */
bd_status bd_gen_ge1_array(uint64_t seed, size_t m, size_t n, double cap, char** out_json);

/* ---- bound evaluation -------------------------------------------------- */

/* NULL-terminated list of the canonical bound names. */
const char* const* bd_bound_names(void);

/* Evaluates one bound on inputs given as JSON documents (dense matrices,
 * block matrices, or value arrays, matching the bound's signature). For
 * "fischer" the split row and for "coro24" the exponent are passed via
 * extra_arg (ignored otherwise; pass 0). tol < 0 selects the default 1e-8. */
bd_status bd_bound_eval(const char* name, const char* const* input_jsons, size_t n_inputs,
                        long extra_arg, double tol, bd_report** out);

/* Re-evaluates a serialized instance document ({"bound", "inputs"/"values",
 * ...}); bound_override may be NULL, tol_override < 0 keeps the stored
 * tolerance. */
bd_status bd_replay(const char* instance_json, const char* bound_override, double tol_override,
                    bd_report** out);

bd_status bd_report_to_json(const bd_report* r, char** out);
double bd_report_lhs_log(const bd_report* r);
double bd_report_rhs_log(const bd_report* r);
double bd_report_margin_log(const bd_report* r);
int bd_report_holds(const bd_report* r);
void bd_report_free(bd_report* r);

/* ---- verification suite ------------------------------------------------ */

/* config_json: {"seed", "samplesPerBound", "maxN", "maxBlockDim",
 * "maxFactors", "condCap", "tol", "bounds", "includeSingular", "threads"};
 * every field optional, "{}" runs the defaults. */
bd_status bd_suite_run(const char* config_json, bd_suite_report** out);
bd_status bd_suite_report_to_json(const bd_suite_report* r, char** out);
size_t bd_suite_violations(const bd_suite_report* r);
void bd_suite_report_free(bd_suite_report* r);

/* Reduction-equality checks; all_pass receives 0/1. */
bd_status bd_reductions_run(const char* config_json, char** out_json, int* all_pass);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* BLOCKDET_H */
