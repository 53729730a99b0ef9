#include "core/suite.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "core/generate.hpp"
#include "core/rng.hpp"

namespace blockdet {

namespace {

constexpr double kReductionTol = 1e-12;
constexpr double kSingularShare = 0.25; // share of singular draws when enabled
constexpr double kPerturbDelta = 1e-5;  // recorded delta for PD-only bounds
constexpr std::size_t kScalarMaxM = 6;  // lemma23 / coro24 sampling caps
constexpr std::size_t kScalarMaxN = 8;
constexpr long kScalarMaxQ = 16;
constexpr double kScalarEntryCap = 1e3;

std::uint64_t bound_ordinal(const std::string& name) {
    const auto& names = all_bound_names();
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return i;
    throw Error(ErrorCode::ConfigInvalid, "unknown bound name '" + name + "'");
}

/// Sub-seed scheme (documented in the README): every instance stream is
/// keyed by scramble(scramble(seed + ordinal + 1) + index).
std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t ordinal, std::uint64_t index) {
    return Rng::scramble(Rng::scramble(seed + ordinal + 1) + index);
}

ScalarKind pick_kind(Rng& rng) {
    return rng.uniform() < 0.5 ? ScalarKind::Real : ScalarKind::Complex;
}

Matrix draw_pd(Rng& rng, std::size_t dim, const SuiteConfig& cfg, ScalarKind kind) {
    GenConfig g;
    g.seed = rng.next_u64();
    g.dim = dim;
    g.cond_cap = cfg.cond_cap;
    g.scalar_kind = kind;
    return random_pd(g);
}

Matrix draw_singular(Rng& rng, std::size_t dim, ScalarKind kind) {
    GenConfig g;
    g.seed = rng.next_u64();
    g.dim = dim;
    g.scalar_kind = kind;
    g.rank_deficit = 1;
    return random_psd_singular(g);
}

BlockMatrix draw_block_pd(Rng& rng, std::size_t n, std::size_t block_dim,
                          const SuiteConfig& cfg, ScalarKind kind) {
    GenConfig g;
    g.seed = rng.next_u64();
    g.n = n;
    g.block_dim = block_dim;
    g.cond_cap = cfg.cond_cap;
    g.scalar_kind = kind;
    return random_block_pd(g);
}

BlockMatrix draw_block_singular(Rng& rng, std::size_t n, std::size_t block_dim,
                                ScalarKind kind) {
    GenConfig g;
    g.seed = rng.next_u64();
    g.dim = n * block_dim;
    g.scalar_kind = kind;
    g.rank_deficit = 1;
    return partition(random_psd_singular(g), n, block_dim, block_dim);
}

std::size_t draw_size(Rng& rng, std::size_t lo, std::size_t hi) {
    return static_cast<std::size_t>(rng.uniform_int(lo, hi));
}

} // namespace

const std::vector<std::string>& all_bound_names() {
    static const std::vector<std::string> names{
        "hadamard", "fischer",  "oppenheim", "oppenheim_schur", "chen",
        "kim",      "thm21",    "thm24",     "thm25",           "coro26",
        "coro27",   "lemma23",  "coro24"};
    return names;
}

bool is_bound_name(const std::string& name) {
    for (const auto& n : all_bound_names())
        if (n == name) return true;
    return false;
}

Json suite_config_to_json(const SuiteConfig& cfg) {
    Json bounds = Json::array();
    for (const auto& b : (cfg.bounds.empty() ? all_bound_names() : cfg.bounds))
        bounds.push_back(b);
    return Json{{"seed", cfg.seed},
                {"samplesPerBound", cfg.samples_per_bound},
                {"maxN", cfg.max_n},
                {"maxBlockDim", cfg.max_block_dim},
                {"maxFactors", cfg.max_factors},
                {"condCap", cfg.cond_cap},
                {"tol", cfg.tol},
                {"bounds", std::move(bounds)},
                {"includeSingular", cfg.include_singular}};
}

SuiteConfig suite_config_from_json(const Json& j) {
    if (!j.is_object())
        throw Error(ErrorCode::ConfigInvalid, "suite config: expected an object");
    SuiteConfig cfg;
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("samplesPerBound"))
        cfg.samples_per_bound = j.at("samplesPerBound").get<std::size_t>();
    if (j.contains("maxN")) cfg.max_n = j.at("maxN").get<std::size_t>();
    if (j.contains("maxBlockDim")) cfg.max_block_dim = j.at("maxBlockDim").get<std::size_t>();
    if (j.contains("maxFactors")) cfg.max_factors = j.at("maxFactors").get<std::size_t>();
    if (j.contains("condCap")) cfg.cond_cap = j.at("condCap").get<double>();
    if (j.contains("tol")) cfg.tol = j.at("tol").get<double>();
    if (j.contains("includeSingular")) cfg.include_singular = j.at("includeSingular").get<bool>();
    if (j.contains("threads")) cfg.threads = j.at("threads").get<std::size_t>();
    if (j.contains("bounds"))
        for (const Json& b : j.at("bounds"))
            cfg.bounds.push_back(b.get<std::string>());
    return cfg;
}

namespace {

void validate_config(const SuiteConfig& cfg) {
    if (cfg.max_n < 2)
        throw Error(ErrorCode::ConfigInvalid, "maxN must be at least 2");
    if (cfg.max_block_dim < 1)
        throw Error(ErrorCode::ConfigInvalid, "maxBlockDim must be positive");
    if (cfg.max_factors < 2)
        throw Error(ErrorCode::ConfigInvalid, "maxFactors must be at least 2");
    if (cfg.cond_cap < 1.0)
        throw Error(ErrorCode::ConfigInvalid, "condCap must be >= 1");
    if (!(cfg.tol > 0.0))
        throw Error(ErrorCode::ConfigInvalid, "tol must be positive");
    for (const auto& b : cfg.bounds)
        if (!is_bound_name(b))
            throw Error(ErrorCode::ConfigInvalid, "unknown bound name '" + b + "'");
}

std::size_t resolve_threads(const SuiteConfig& cfg) {
    if (cfg.threads > 0) return cfg.threads;
    if (const char* env = std::getenv("BLOCKDET_THREADS")) {
        const long v = std::atol(env);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

} // namespace

Instance sample_instance(const std::string& name, std::size_t idx, const SuiteConfig& cfg) {
    Instance inst;
    inst.bound = name;
    inst.tol = cfg.tol;
    inst.seed = instance_seed(cfg.seed, bound_ordinal(name), idx);
    Rng rng(inst.seed);
    const ScalarKind kind = pick_kind(rng);
    const bool singular_flavor = cfg.include_singular && rng.uniform() < kSingularShare;

    auto dense_psd_family = [&](std::size_t count) {
        const std::size_t dim = draw_size(rng, 2, cfg.max_n);
        const std::size_t which = singular_flavor ? draw_size(rng, 0, count - 1) : count;
        for (std::size_t i = 0; i < count; ++i)
            inst.matrices.push_back(i == which ? draw_singular(rng, dim, kind)
                                               : draw_pd(rng, dim, cfg, kind));
        return dim;
    };
    auto dense_pd_family = [&](std::size_t count) {
        // PD-only bounds: singular draws are perturbed back to definite.
        const std::size_t dim = draw_size(rng, 2, cfg.max_n);
        const std::size_t which = singular_flavor ? draw_size(rng, 0, count - 1) : count;
        for (std::size_t i = 0; i < count; ++i) {
            if (i == which) {
                inst.matrices.push_back(perturb_to_pd(draw_singular(rng, dim, kind), kPerturbDelta));
                inst.perturb_delta = kPerturbDelta;
            } else {
                inst.matrices.push_back(draw_pd(rng, dim, cfg, kind));
            }
        }
    };

    if (name == "hadamard") {
        dense_psd_family(1);
    } else if (name == "fischer") {
        const std::size_t dim = dense_psd_family(1);
        inst.split = draw_size(rng, 1, dim - 1);
    } else if (name == "oppenheim" || name == "oppenheim_schur") {
        dense_psd_family(2);
    } else if (name == "chen") {
        dense_pd_family(2);
    } else if (name == "kim") {
        const std::size_t n = draw_size(rng, 2, cfg.max_n);
        const std::size_t k = draw_size(rng, 1, cfg.max_block_dim);
        for (int i = 0; i < 2; ++i)
            inst.blocks.push_back(singular_flavor
                                      ? partition(perturb_to_pd(flatten(draw_block_singular(
                                                                    rng, n, k, kind)),
                                                                kPerturbDelta),
                                                  n, k, k)
                                      : draw_block_pd(rng, n, k, cfg, kind));
        if (singular_flavor) inst.perturb_delta = kPerturbDelta;
    } else if (name == "thm21" || name == "thm24") {
        const std::size_t n = draw_size(rng, 2, cfg.max_n);
        const std::size_t m = name == "thm21" ? 2 : draw_size(rng, 2, cfg.max_factors);
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t q = draw_size(rng, 1, cfg.max_block_dim);
            if (singular_flavor && i == 0) {
                inst.blocks.push_back(partition(
                    perturb_to_pd(flatten(draw_block_singular(rng, n, q, kind)), kPerturbDelta),
                    n, q, q));
                inst.perturb_delta = kPerturbDelta;
            } else {
                inst.blocks.push_back(draw_block_pd(rng, n, q, cfg, kind));
            }
        }
    } else if (name == "thm25") {
        const std::size_t n = draw_size(rng, 2, cfg.max_n);
        const std::size_t m = draw_size(rng, 2, cfg.max_factors);
        const std::size_t which = singular_flavor ? draw_size(rng, 0, m - 1) : m;
        for (std::size_t i = 0; i < m; ++i) {
            const std::size_t q = draw_size(rng, 1, cfg.max_block_dim);
            inst.blocks.push_back(i == which ? draw_block_singular(rng, n, q, kind)
                                             : draw_block_pd(rng, n, q, cfg, kind));
        }
    } else if (name == "coro26") {
        const std::size_t m = draw_size(rng, 2, cfg.max_factors);
        dense_pd_family(m);
    } else if (name == "coro27") {
        const std::size_t m = draw_size(rng, 2, cfg.max_factors);
        dense_psd_family(m);
    } else if (name == "lemma23") {
        const std::size_t m = draw_size(rng, 1, kScalarMaxM);
        const std::size_t n = draw_size(rng, 1, kScalarMaxN);
        inst.values = random_ge1_array(rng.next_u64(), m, n, kScalarEntryCap);
    } else if (name == "coro24") {
        const std::size_t m = draw_size(rng, 1, kScalarMaxM);
        inst.power = static_cast<long>(draw_size(rng, 1, static_cast<std::size_t>(kScalarMaxQ)));
        inst.values = random_ge1_array(rng.next_u64(), 1, m, kScalarEntryCap);
    } else {
        throw Error(ErrorCode::ConfigInvalid, "unknown bound name '" + name + "'");
    }
    return inst;
}

InequalityReport evaluate_instance(const Instance& inst) {
    const std::string& b = inst.bound;
    auto need_matrices = [&](std::size_t lo, std::size_t hi) {
        if (inst.matrices.size() < lo || inst.matrices.size() > hi || !inst.blocks.empty() ||
            !inst.values.empty())
            throw Error(ErrorCode::ShapeMismatch,
                        b + ": wrong input shape for this bound");
    };
    auto need_blocks = [&](std::size_t lo, std::size_t hi) {
        if (inst.blocks.size() < lo || inst.blocks.size() > hi || !inst.matrices.empty() ||
            !inst.values.empty())
            throw Error(ErrorCode::ShapeMismatch,
                        b + ": wrong input shape for this bound");
    };

    if (b == "hadamard") {
        need_matrices(1, 1);
        return hadamard_ineq(inst.matrices[0], inst.tol);
    }
    if (b == "fischer") {
        need_matrices(1, 1);
        return fischer_ineq(inst.matrices[0], inst.split, inst.tol);
    }
    if (b == "oppenheim") {
        need_matrices(2, 2);
        return oppenheim_ineq(inst.matrices[0], inst.matrices[1], inst.tol);
    }
    if (b == "oppenheim_schur") {
        need_matrices(2, 2);
        return oppenheim_schur_ineq(inst.matrices[0], inst.matrices[1], inst.tol);
    }
    if (b == "chen") {
        need_matrices(2, 2);
        return chen_bound(inst.matrices[0], inst.matrices[1], inst.tol);
    }
    if (b == "kim") {
        need_blocks(2, 2);
        return kim_bound(inst.blocks[0], inst.blocks[1], inst.tol);
    }
    if (b == "thm21") {
        need_blocks(2, 2);
        return thm21_bound(inst.blocks[0], inst.blocks[1], inst.tol);
    }
    if (b == "thm24") {
        need_blocks(1, SIZE_MAX);
        return thm24_bound(inst.blocks, inst.tol);
    }
    if (b == "thm25") {
        need_blocks(1, SIZE_MAX);
        return thm25_ineq(inst.blocks, inst.tol);
    }
    if (b == "coro26") {
        need_matrices(1, SIZE_MAX);
        return coro26_bound(inst.matrices, inst.tol);
    }
    if (b == "coro27") {
        need_matrices(1, SIZE_MAX);
        return coro27_ineq(inst.matrices, inst.tol);
    }
    if (b == "lemma23") {
        if (inst.values.empty())
            throw Error(ErrorCode::ShapeMismatch, "lemma23: instance carries no value array");
        return lemma23_check(inst.values, inst.tol);
    }
    if (b == "coro24") {
        if (inst.values.size() != 1)
            throw Error(ErrorCode::ShapeMismatch, "coro24: instance needs one value row");
        return coro24_check(inst.values[0], inst.power, inst.tol);
    }
    throw Error(ErrorCode::ConfigInvalid, "unknown bound name '" + b + "'");
}

Json instance_to_json(const Instance& inst) {
    Json out{{"bound", inst.bound}, {"tol", inst.tol}, {"seed", inst.seed}};
    if (!inst.matrices.empty() || !inst.blocks.empty()) {
        Json inputs = Json::array();
        for (const Matrix& m : inst.matrices) inputs.push_back(matrix_to_json(m));
        for (const BlockMatrix& m : inst.blocks) inputs.push_back(block_matrix_to_json(m));
        out["inputs"] = std::move(inputs);
    }
    if (!inst.values.empty()) out["values"] = ge1_array_to_json(inst.values);
    if (inst.bound == "coro24") out["q"] = inst.power;
    if (inst.bound == "fischer") out["split"] = inst.split;
    if (inst.perturb_delta) out["perturbDelta"] = *inst.perturb_delta;
    return out;
}

Instance instance_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("bound"))
        throw Error(ErrorCode::ParseError, "instance: expected an object with a 'bound' name");
    Instance inst;
    inst.bound = j.at("bound").get<std::string>();
    if (j.contains("tol")) inst.tol = j.at("tol").get<double>();
    if (j.contains("seed")) inst.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("inputs"))
        for (const Json& in : j.at("inputs")) {
            if (in.is_object() && in.contains("blocks"))
                inst.blocks.push_back(block_matrix_from_json(in));
            else
                inst.matrices.push_back(matrix_from_json(in));
        }
    if (j.contains("values")) inst.values = ge1_array_from_json(j.at("values"));
    if (j.contains("q")) inst.power = j.at("q").get<long>();
    if (j.contains("split")) inst.split = j.at("split").get<std::size_t>();
    if (j.contains("perturbDelta")) inst.perturb_delta = j.at("perturbDelta").get<double>();
    return inst;
}

InequalityReport replay_instance(const Json& serialized, const std::string& bound_override,
                                 double tol_override) {
    Instance inst = instance_from_json(serialized);
    if (!bound_override.empty()) inst.bound = bound_override;
    if (tol_override >= 0.0) inst.tol = tol_override;
    return evaluate_instance(inst);
}

namespace {

struct ItemResult {
    double margin = 0.0;
    bool holds = true;
    bool infinite = false;
    bool equality = false;
    std::string violation; // serialized {instance, report} when not holding
};

ItemResult run_item(const std::string& bound, std::size_t idx, const SuiteConfig& cfg) {
    ItemResult res;
    try {
        const Instance inst = sample_instance(bound, idx, cfg);
        try {
            const InequalityReport rep = evaluate_instance(inst);
            res.margin = rep.margin_log;
            res.holds = rep.holds;
            res.infinite = std::isinf(rep.margin_log);
            res.equality = !res.infinite && std::abs(rep.margin_log) <= kEqualityEps;
            if (!rep.holds) {
                Json v{{"instance", instance_to_json(inst)}, {"report", report_to_json(rep)}};
                res.violation = v.dump();
            }
        } catch (const std::exception& e) {
            // An evaluation failure on a generated instance is itself a
            // finding; surface it as a violation rather than aborting the run.
            res.holds = false;
            res.margin = std::nan("");
            Json v{{"instance", instance_to_json(inst)}, {"error", e.what()}};
            res.violation = v.dump();
        }
    } catch (const std::exception& e) {
        res.holds = false;
        res.margin = std::nan("");
        Json v{{"bound", bound}, {"index", idx}, {"error", e.what()}};
        res.violation = v.dump();
    }
    return res;
}

} // namespace

SuiteReport run_suite(const SuiteConfig& cfg) {
    validate_config(cfg);
    const auto start = std::chrono::steady_clock::now();

    const std::vector<std::string> bounds = cfg.bounds.empty() ? all_bound_names() : cfg.bounds;
    const std::size_t per = cfg.samples_per_bound;
    const std::size_t total = bounds.size() * per;

    std::vector<ItemResult> results(total);
    const std::size_t threads = std::min(resolve_threads(cfg), std::max<std::size_t>(total, 1));
    if (total > 0) {
        std::atomic<std::size_t> cursor{0};
        auto worker = [&]() {
            for (;;) {
                const std::size_t k = cursor.fetch_add(1);
                if (k >= total) return;
                results[k] = run_item(bounds[k / per], k % per, cfg);
            }
        };
        if (threads <= 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            pool.reserve(threads);
            for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
            for (auto& t : pool) t.join();
        }
    }

    SuiteReport rep;
    rep.config = cfg;
    for (std::size_t b = 0; b < bounds.size(); ++b) {
        BoundStats stats;
        stats.name = bounds[b];
        stats.samples = per;
        double sum = 0.0;
        std::size_t finite = 0;
        for (std::size_t i = 0; i < per; ++i) {
            const ItemResult& r = results[b * per + i];
            if (!r.holds) {
                stats.violations.push_back(parse_json_text(r.violation));
                rep.total_violations += 1;
            }
            if (r.infinite) {
                stats.infinite_margins += 1;
            } else if (!std::isnan(r.margin)) {
                sum += r.margin;
                finite += 1;
                if (!stats.min_margin || r.margin < *stats.min_margin)
                    stats.min_margin = r.margin;
            }
            if (r.equality) stats.equality_hits += 1;
        }
        if (finite > 0) stats.mean_margin = sum / static_cast<double>(finite);
        rep.per_bound.push_back(std::move(stats));
    }

    rep.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

Json suite_report_to_json(const SuiteReport& rep) {
    Json bounds = Json::object();
    for (const BoundStats& s : rep.per_bound) {
        Json violations{{"count", s.violations.size()}, {"instances", Json::array()}};
        for (const Json& v : s.violations) violations["instances"].push_back(v);
        Json entry{{"samples", s.samples},
                   {"violations", std::move(violations)},
                   {"minMarginLog", s.min_margin ? log_value_to_json(*s.min_margin) : Json()},
                   {"meanMarginLog", s.mean_margin ? log_value_to_json(*s.mean_margin) : Json()},
                   {"equalityHits", s.equality_hits},
                   {"infiniteMargins", s.infinite_margins}};
        bounds[s.name] = std::move(entry);
    }
    return Json{{"seed", rep.config.seed},
                {"config", suite_config_to_json(rep.config)},
                {"totalViolations", rep.total_violations},
                {"bounds", std::move(bounds)},
                {"wallTimeSeconds", rep.wall_seconds}};
}

namespace {

double report_delta(const InequalityReport& a, const InequalityReport& b) {
    auto d = [](double x, double y) {
        if (std::isinf(x) && std::isinf(y) && (x > 0) == (y > 0)) return 0.0;
        return std::abs(x - y);
    };
    double worst = d(a.lhs_log, b.lhs_log);
    worst = std::max(worst, d(a.rhs_log, b.rhs_log));
    worst = std::max(worst, d(a.margin_log, b.margin_log));
    if (a.terms.size() != b.terms.size()) return kPosInfinity;
    for (std::size_t t = 0; t < a.terms.size(); ++t) {
        if (a.terms[t].ratio_terms.size() != b.terms[t].ratio_terms.size()) return kPosInfinity;
        for (std::size_t r = 0; r < a.terms[t].ratio_terms.size(); ++r)
            worst = std::max(worst, d(a.terms[t].ratio_terms[r], b.terms[t].ratio_terms[r]));
        worst = std::max(worst, d(a.terms[t].r_mu, b.terms[t].r_mu));
        worst = std::max(worst, d(a.terms[t].s_mu, b.terms[t].s_mu));
    }
    return worst;
}

} // namespace

ReductionsReport check_reductions(const SuiteConfig& cfg) {
    validate_config(cfg);
    ReductionsReport out;
    out.seed = cfg.seed;
    out.samples = cfg.samples_per_bound;

    // Every reduction draws its own deterministic instance stream, indexed
    // like a pseudo-bound after the real ones.
    auto stream_seed = [&](std::uint64_t stream, std::size_t idx) {
        return instance_seed(cfg.seed, all_bound_names().size() + stream, idx);
    };

    auto run_pair = [&](const std::string& name, std::uint64_t stream, auto&& eval_delta) {
        ReductionResult r;
        r.name = name;
        r.samples = cfg.samples_per_bound;
        for (std::size_t i = 0; i < cfg.samples_per_bound; ++i)
            r.max_delta = std::max(r.max_delta, eval_delta(stream_seed(stream, i)));
        r.pass = r.max_delta <= kReductionTol;
        out.results.push_back(r);
    };
    auto run_bitwise = [&](const std::string& name, std::uint64_t stream, auto&& eval_equal) {
        ReductionResult r;
        r.name = name;
        r.samples = cfg.samples_per_bound;
        r.bitwise = true;
        r.pass = true;
        for (std::size_t i = 0; i < cfg.samples_per_bound; ++i)
            r.pass = r.pass && eval_equal(stream_seed(stream, i));
        out.results.push_back(r);
    };

    auto two_dense_pd = [&](std::uint64_t s, std::size_t max_dim) {
        Rng rng(s);
        const ScalarKind kind = pick_kind(rng);
        const std::size_t dim = draw_size(rng, 2, max_dim);
        Matrix a = draw_pd(rng, dim, cfg, kind);
        Matrix b = draw_pd(rng, dim, cfg, kind);
        return std::pair<Matrix, Matrix>(std::move(a), std::move(b));
    };

    run_pair("thm24_m2_vs_thm21", 0, [&](std::uint64_t s) {
        Rng rng(s);
        const ScalarKind kind = pick_kind(rng);
        const std::size_t n = draw_size(rng, 2, cfg.max_n);
        const std::size_t p = draw_size(rng, 1, cfg.max_block_dim);
        const std::size_t q = draw_size(rng, 1, cfg.max_block_dim);
        const BlockMatrix a = draw_block_pd(rng, n, p, cfg, kind);
        const BlockMatrix b = draw_block_pd(rng, n, q, cfg, kind);
        return report_delta(thm24_bound({a, b}, cfg.tol), thm21_bound(a, b, cfg.tol));
    });
    run_pair("thm21_unit_blocks_vs_chen", 1, [&](std::uint64_t s) {
        auto [a, b] = two_dense_pd(s, cfg.max_n);
        return report_delta(thm21_bound(as_unit_blocks(a), as_unit_blocks(b), cfg.tol),
                            chen_bound(a, b, cfg.tol));
    });
    run_pair("coro26_m2_vs_chen", 2, [&](std::uint64_t s) {
        auto [a, b] = two_dense_pd(s, cfg.max_n);
        return report_delta(coro26_bound({a, b}, cfg.tol), chen_bound(a, b, cfg.tol));
    });
    run_pair("coro27_m2_vs_oppenheim_schur", 3, [&](std::uint64_t s) {
        auto [a, b] = two_dense_pd(s, cfg.max_n);
        return report_delta(coro27_ineq({a, b}, cfg.tol), oppenheim_schur_ineq(a, b, cfg.tol));
    });
    run_pair("thm25_m2_unit_blocks_vs_oppenheim_schur", 4, [&](std::uint64_t s) {
        auto [a, b] = two_dense_pd(s, cfg.max_n);
        return report_delta(thm25_ineq({as_unit_blocks(a), as_unit_blocks(b)}, cfg.tol),
                            oppenheim_schur_ineq(a, b, cfg.tol));
    });
    run_pair("kim_vs_thm21_equal_orders", 5, [&](std::uint64_t s) {
        Rng rng(s);
        const ScalarKind kind = pick_kind(rng);
        const std::size_t n = draw_size(rng, 2, cfg.max_n);
        const std::size_t k = draw_size(rng, 1, cfg.max_block_dim);
        const BlockMatrix a = draw_block_pd(rng, n, k, cfg, kind);
        const BlockMatrix b = draw_block_pd(rng, n, k, cfg, kind);
        return report_delta(kim_bound(a, b, cfg.tol), thm21_bound(a, b, cfg.tol));
    });

    run_bitwise("khatri_rao_unit_blocks_vs_hadamard", 6, [&](std::uint64_t s) {
        Rng rng(s);
        const ScalarKind kind = pick_kind(rng);
        const std::size_t n = draw_size(rng, 1, cfg.max_n);
        // The reduction is structural, so indefinite inputs count too.
        const Matrix a = random_hermitian_indefinite(rng.next_u64(), n, kind);
        const Matrix b = random_hermitian_indefinite(rng.next_u64(), n, kind);
        const BlockMatrix kr = khatri_rao(as_unit_blocks(a), as_unit_blocks(b));
        return bitwise_equal(flatten(kr), hadamard(a, b));
    });
    run_bitwise("khatri_rao_single_block_vs_kronecker", 7, [&](std::uint64_t s) {
        Rng rng(s);
        const ScalarKind kind = pick_kind(rng);
        const std::size_t p = draw_size(rng, 1, cfg.max_block_dim);
        const std::size_t q = draw_size(rng, 1, cfg.max_block_dim);
        const Matrix a = random_hermitian_indefinite(rng.next_u64(), p, kind);
        const Matrix b = random_hermitian_indefinite(rng.next_u64(), q, kind);
        const BlockMatrix kr = khatri_rao(partition(a, 1, p, p), partition(b, 1, q, q));
        return bitwise_equal(flatten(kr), kronecker(a, b));
    });

    out.all_pass = true;
    for (const ReductionResult& r : out.results) out.all_pass = out.all_pass && r.pass;
    return out;
}

Json reductions_report_to_json(const ReductionsReport& rep) {
    Json results = Json::object();
    for (const ReductionResult& r : rep.results) {
        Json entry{{"samples", r.samples}, {"pass", r.pass}};
        if (r.bitwise)
            entry["bitwise"] = true;
        else
            entry["maxDeltaLog"] = log_value_to_json(r.max_delta);
        results[r.name] = std::move(entry);
    }
    return Json{{"seed", rep.seed},
                {"samples", rep.samples},
                {"tolerance", kReductionTol},
                {"reductions", std::move(results)},
                {"allPass", rep.all_pass}};
}

} // namespace blockdet
