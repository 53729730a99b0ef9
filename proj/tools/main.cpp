// Command-line front end. Talks to the core exclusively through the public
// C API in blockdet/blockdet.h; JSON assembly and report formatting happen
// on this side of the boundary.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "blockdet/blockdet.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

struct StringDeleter {
    void operator()(char* s) const { bd_string_free(s); }
};
using ApiString = std::unique_ptr<char, StringDeleter>;

int fail(const std::string& what) {
    std::cerr << "error: " << what << "\n";
    return kExitUsage;
}

int fail_status(bd_status status) {
    std::cerr << "error: " << bd_status_name(status) << ": " << bd_last_error() << "\n";
    return kExitUsage;
}

bool read_file(const std::string& path, std::string& out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return false;
    std::ostringstream buf;
    buf << in.rdbuf();
    out = buf.str();
    return true;
}

bool write_output(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text << "\n";
        return true;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << text << "\n";
    return out.good();
}

std::string format_log_value(const Json& v) {
    if (v.is_null()) return "";
    if (v.is_string()) return v.get<std::string>();
    std::ostringstream s;
    s.precision(17);
    s << v.get<double>();
    return s.str();
}

// ---- verify -----------------------------------------------------------

struct VerifyOptions {
    std::uint64_t seed = 42;
    std::size_t samples = 1000;
    std::string bounds;
    std::size_t max_n = 5;
    std::size_t max_block = 3;
    std::size_t max_factors = 4;
    double cond_cap = 1e4;
    double tol = 1e-8;
    std::string out;
    bool include_singular = false;
};

int cmd_verify(const VerifyOptions& opt) {
    Json cfg{{"seed", opt.seed},
             {"samplesPerBound", opt.samples},
             {"maxN", opt.max_n},
             {"maxBlockDim", opt.max_block},
             {"maxFactors", opt.max_factors},
             {"condCap", opt.cond_cap},
             {"tol", opt.tol},
             {"includeSingular", opt.include_singular}};
    if (!opt.bounds.empty()) {
        Json list = Json::array();
        std::stringstream ss(opt.bounds);
        std::string item;
        while (std::getline(ss, item, ','))
            if (!item.empty()) list.push_back(item);
        cfg["bounds"] = std::move(list);
    }

    bd_suite_report* rep = nullptr;
    if (bd_status s = bd_suite_run(cfg.dump().c_str(), &rep)) return fail_status(s);
    char* raw = nullptr;
    if (bd_status s = bd_suite_report_to_json(rep, &raw)) {
        bd_suite_report_free(rep);
        return fail_status(s);
    }
    ApiString json(raw);
    const std::size_t violations = bd_suite_violations(rep);
    bd_suite_report_free(rep);

    if (!write_output(opt.out, json.get())) return fail("cannot write " + opt.out);
    if (violations > 0) {
        std::cerr << violations << " violation(s) found\n";
        return kExitViolation;
    }
    return kExitOk;
}

// ---- bound ------------------------------------------------------------

struct BoundOptions {
    std::string name;
    std::vector<std::string> inputs;
    double tol = -1.0;
    long split = 0;
    long power = 0;
};

int cmd_bound(const BoundOptions& opt) {
    std::vector<std::string> docs;
    for (const std::string& path : opt.inputs) {
        std::string text;
        if (!read_file(path, text)) return fail("cannot read " + path);
        docs.push_back(std::move(text));
    }

    bd_report* rep = nullptr;
    bd_status status;
    bool replayed = false;
    if (docs.size() == 1) {
        // A serialized instance file carries its own bound name and inputs.
        const Json probe = Json::parse(docs[0], nullptr, false);
        if (probe.is_object() && probe.contains("bound")) {
            status = bd_replay(docs[0].c_str(), opt.name.empty() ? nullptr : opt.name.c_str(),
                               opt.tol, &rep);
            replayed = true;
        }
    }
    if (!replayed) {
        if (opt.name.empty()) return fail("--name is required unless replaying an instance file");
        std::vector<const char*> ptrs;
        for (const std::string& d : docs) ptrs.push_back(d.c_str());
        const long extra = opt.name == "fischer" ? opt.split : opt.power;
        status = bd_bound_eval(opt.name.c_str(), ptrs.data(), ptrs.size(), extra, opt.tol, &rep);
    }
    if (status != BD_OK) return fail_status(status);

    char* raw = nullptr;
    if (bd_status s = bd_report_to_json(rep, &raw)) {
        bd_report_free(rep);
        return fail_status(s);
    }
    ApiString json(raw);
    const bool holds = bd_report_holds(rep) != 0;
    bd_report_free(rep);
    std::cout << json.get() << "\n";
    return holds ? kExitOk : kExitViolation;
}

// ---- gen --------------------------------------------------------------

struct GenOptions {
    std::string kind = "pd";
    std::size_t dim = 0;
    std::size_t n = 0;
    std::size_t block_dim = 0;
    std::uint64_t seed = 0;
    double cond_cap = 1e4;
    std::size_t rank_deficit = 0;
    bool complex_scalars = false;
    std::string out;
};

int cmd_gen(const GenOptions& opt) {
    const int cplx = opt.complex_scalars ? 1 : 0;
    char* raw = nullptr;
    if (opt.kind == "pd" || opt.kind == "psd") {
        bd_matrix* m = nullptr;
        const bd_status s = opt.kind == "pd"
                                ? bd_gen_pd(opt.seed, opt.dim, opt.cond_cap, cplx, &m)
                                : bd_gen_psd_singular(opt.seed, opt.dim, opt.rank_deficit, cplx, &m);
        if (s != BD_OK) return fail_status(s);
        const bd_status sj = bd_matrix_to_json(m, &raw);
        bd_matrix_free(m);
        if (sj != BD_OK) return fail_status(sj);
    } else if (opt.kind == "block-pd") {
        bd_block_matrix* m = nullptr;
        if (bd_status s = bd_gen_block_pd(opt.seed, opt.n, opt.block_dim, opt.cond_cap, cplx, &m))
            return fail_status(s);
        const bd_status sj = bd_block_to_json(m, &raw);
        bd_block_free(m);
        if (sj != BD_OK) return fail_status(sj);
    } else {
        return fail("unknown --kind '" + opt.kind + "' (pd, psd, block-pd)");
    }
    ApiString json(raw);
    if (!write_output(opt.out, json.get())) return fail("cannot write " + opt.out);
    return kExitOk;
}

// ---- report -----------------------------------------------------------

struct ReportOptions {
    std::string in;
    std::string format = "csv";
};

int cmd_report(const ReportOptions& opt) {
    std::string text;
    if (!read_file(opt.in, text)) return fail("cannot read " + opt.in);
    const Json rep = Json::parse(text, nullptr, false);
    if (rep.is_discarded() || !rep.is_object() || !rep.contains("bounds"))
        return fail("input is not a suite report");

    struct Row {
        std::string name;
        Json entry;
    };
    std::vector<Row> rows;
    for (const auto& [name, entry] : rep.at("bounds").items())
        rows.push_back({name, entry});

    auto cell = [](const Json& e, const char* key) -> Json {
        return e.contains(key) ? e.at(key) : Json();
    };

    if (opt.format == "csv" || opt.format == "md") {
        const bool md = opt.format == "md";
        if (md) {
            std::cout << "| bound | samples | violations | equalityHits | minMarginLog | "
                         "meanMarginLog |\n";
            std::cout << "|---|---|---|---|---|---|\n";
        } else {
            std::cout << "bound,samples,violations,equalityHits,minMarginLog,meanMarginLog\n";
        }
        for (const Row& r : rows) {
            const auto violations = cell(r.entry, "violations");
            const std::size_t vcount =
                violations.is_object() ? violations.at("count").get<std::size_t>() : 0;
            const std::string sep = md ? " | " : ",";
            const std::string lead = md ? "| " : "";
            const std::string tail = md ? " |" : "";
            std::cout << lead << r.name << sep << cell(r.entry, "samples") << sep << vcount
                      << sep << cell(r.entry, "equalityHits") << sep
                      << format_log_value(cell(r.entry, "minMarginLog")) << sep
                      << format_log_value(cell(r.entry, "meanMarginLog")) << tail << "\n";
        }
        return kExitOk;
    }
    if (opt.format == "json") {
        Json out = Json::object();
        for (const Row& r : rows) {
            const auto violations = cell(r.entry, "violations");
            out[r.name] = Json{{"samples", cell(r.entry, "samples")},
                               {"violations", violations.is_object() ? violations.at("count")
                                                                     : Json(0)},
                               {"equalityHits", cell(r.entry, "equalityHits")},
                               {"minMarginLog", cell(r.entry, "minMarginLog")},
                               {"meanMarginLog", cell(r.entry, "meanMarginLog")}};
        }
        std::cout << out.dump(2) << "\n";
        return kExitOk;
    }
    return fail("unknown --format '" + opt.format + "' (csv, json, md)");
}

// ---- reductions ---------------------------------------------------------

struct ReductionsOptions {
    std::uint64_t seed = 42;
    std::size_t samples = 200;
    std::string out;
};

int cmd_reductions(const ReductionsOptions& opt) {
    const Json cfg{{"seed", opt.seed}, {"samplesPerBound", opt.samples}};
    char* raw = nullptr;
    int all_pass = 0;
    if (bd_status s = bd_reductions_run(cfg.dump().c_str(), &raw, &all_pass))
        return fail_status(s);
    ApiString json(raw);
    if (!write_output(opt.out, json.get())) return fail("cannot write " + opt.out);
    if (!all_pass) {
        std::cerr << "reduction check failed\n";
        return kExitViolation;
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"blockdet: determinant-inequality verification for Kronecker, Hadamard "
                 "and Khatri-Rao products"};
    app.require_subcommand(1);

    VerifyOptions vo;
    auto* verify = app.add_subcommand("verify", "run the sampled verification suite");
    verify->add_option("--seed", vo.seed, "suite seed")->capture_default_str();
    verify->add_option("--samples", vo.samples, "samples per bound")->capture_default_str();
    verify->add_option("--bounds", vo.bounds, "comma-separated bound names (default: all)");
    verify->add_option("--max-n", vo.max_n, "matrix/block-grid order cap")->capture_default_str();
    verify->add_option("--max-block", vo.max_block, "block dimension cap")->capture_default_str();
    verify->add_option("--max-factors", vo.max_factors, "factor count cap")->capture_default_str();
    verify->add_option("--cond-cap", vo.cond_cap, "condition-number cap")->capture_default_str();
    verify->add_option("--tol", vo.tol, "margin tolerance in log units")->capture_default_str();
    verify->add_option("--out", vo.out, "write the suite report here instead of stdout");
    verify->add_flag("--include-singular", vo.include_singular,
                     "mix singular instances into semidefinite bounds");

    BoundOptions bo;
    auto* bound = app.add_subcommand("bound", "evaluate one bound on explicit inputs");
    bound->add_option("--name", bo.name, "bound name");
    bound->add_option("--inputs", bo.inputs, "input JSON files")->required()->expected(-1);
    bound->add_option("--tol", bo.tol, "margin tolerance (default 1e-8)");
    bound->add_option("--split", bo.split, "fischer split row");
    bound->add_option("--q", bo.power, "coro24 exponent");

    GenOptions go;
    auto* gen = app.add_subcommand("gen", "generate a seeded random instance");
    gen->add_option("--kind", go.kind, "pd, psd, or block-pd")->capture_default_str();
    gen->add_option("--dim", go.dim, "matrix order (pd/psd)");
    gen->add_option("--n", go.n, "block-grid order (block-pd)");
    gen->add_option("--block-dim", go.block_dim, "block order (block-pd)");
    gen->add_option("--seed", go.seed, "generator seed")->capture_default_str();
    gen->add_option("--cond-cap", go.cond_cap, "condition-number cap")->capture_default_str();
    gen->add_option("--rank-deficit", go.rank_deficit, "rank deficit (psd)");
    gen->add_flag("--complex", go.complex_scalars, "complex entries");
    gen->add_option("--out", go.out, "write the instance here instead of stdout");

    ReportOptions ro;
    auto* report = app.add_subcommand("report", "format a suite report");
    report->add_option("--in", ro.in, "suite report JSON")->required();
    report->add_option("--format", ro.format, "csv, json, or md")->capture_default_str();

    ReductionsOptions xo;
    auto* reductions = app.add_subcommand("reductions", "check the reduction equalities");
    reductions->add_option("--seed", xo.seed, "seed")->capture_default_str();
    reductions->add_option("--samples", xo.samples, "samples per reduction")->capture_default_str();
    reductions->add_option("--out", xo.out, "write the report here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e); // help text on stdout, exit 0
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        std::cerr << "run with --help for usage\n";
        return kExitUsage;
    }

    try {
        if (verify->parsed()) return cmd_verify(vo);
        if (bound->parsed()) return cmd_bound(bo);
        if (gen->parsed()) return cmd_gen(go);
        if (report->parsed()) return cmd_report(ro);
        if (reductions->parsed()) return cmd_reductions(xo);
    } catch (const std::exception& e) {
        return fail(e.what());
    }
    return kExitUsage;
}
