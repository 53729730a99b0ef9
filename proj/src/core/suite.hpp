#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "core/bounds.hpp"
#include "core/json_io.hpp"

namespace blockdet {

/// Canonical bound identifiers, in the order the suite runs them.
const std::vector<std::string>& all_bound_names();
bool is_bound_name(const std::string& name);

struct SuiteConfig {
    std::uint64_t seed = 42;
    std::size_t samples_per_bound = 1000;
    std::size_t max_n = 5;
    std::size_t max_block_dim = 3;
    std::size_t max_factors = 4;
    double cond_cap = 1e4;
    double tol = kDefaultTol;
    std::vector<std::string> bounds; // empty means all
    bool include_singular = false;
    std::size_t threads = 0; // 0: BLOCKDET_THREADS env var, then hardware
};

Json suite_config_to_json(const SuiteConfig& cfg);
SuiteConfig suite_config_from_json(const Json& j);

/// One sampled (or replayed) bound input: exactly one of matrices / blocks /
/// values is populated, depending on the bound.
struct Instance {
    std::string bound;
    double tol = kDefaultTol;
    std::uint64_t seed = 0;
    std::vector<Matrix> matrices;
    std::vector<BlockMatrix> blocks;
    std::vector<std::vector<double>> values;
    long power = 0;        // coro24 exponent
    std::size_t split = 0; // fischer split row
    std::optional<double> perturb_delta;
};

Json instance_to_json(const Instance& inst);
Instance instance_from_json(const Json& j);

/// Dispatches to the bound named in the instance; ShapeMismatch when the
/// inputs do not fit that bound's arity.
InequalityReport evaluate_instance(const Instance& inst);

/// Deterministic re-evaluation of a serialized instance, optionally
/// overriding the stored bound name and tolerance (tol_override < 0 keeps
/// the stored value).
InequalityReport replay_instance(const Json& serialized, const std::string& bound_override,
                                 double tol_override);

/// The sampler run_suite uses, exposed for tests: instance index `idx` of
/// bound `name` under the given config.
Instance sample_instance(const std::string& name, std::size_t idx, const SuiteConfig& cfg);

struct BoundStats {
    std::string name;
    std::size_t samples = 0;
    std::size_t equality_hits = 0;
    std::size_t infinite_margins = 0;
    std::optional<double> min_margin; // over finite margins
    std::optional<double> mean_margin;
    std::vector<Json> violations; // serialized {instance, report} pairs
};

struct SuiteReport {
    SuiteConfig config;
    double wall_seconds = 0.0;
    std::size_t total_violations = 0;
    std::vector<BoundStats> per_bound;
};

/// Evaluates samples_per_bound instances of every requested bound. Instance
/// seeds depend only on (seed, bound, index), results are aggregated in index
/// order, so serial and parallel runs produce identical reports.
SuiteReport run_suite(const SuiteConfig& cfg);

Json suite_report_to_json(const SuiteReport& rep);

/// Reduction-equality checks: specializations that must reproduce another
/// bound's report to 1e-12 log units, and the product reductions that must be
/// bitwise identical.
struct ReductionResult {
    std::string name;
    std::size_t samples = 0;
    bool bitwise = false;
    double max_delta = 0.0; // report-level, log units (0 when bitwise)
    bool pass = false;
};

struct ReductionsReport {
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    std::vector<ReductionResult> results;
    bool all_pass = false;
};

ReductionsReport check_reductions(const SuiteConfig& cfg);

Json reductions_report_to_json(const ReductionsReport& rep);

} // namespace blockdet
