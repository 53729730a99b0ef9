#include <doctest.h>

#include <cmath>

#include "core/generate.hpp"
#include "core/json_io.hpp"
#include "core/rng.hpp"
#include "core/suite.hpp"

using namespace blockdet;

TEST_CASE("matrix JSON round-trips bit-exactly") {
    Rng rng(1);
    for (int iter = 0; iter < 30; ++iter) {
        const std::size_t rows = 1 + iter % 4, cols = 1 + (iter / 2) % 4;
        Matrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                double re, im;
                rng.normal_pair(re, im);
                // Exercise tiny, huge and negative-zero components too.
                if (iter % 5 == 0) re *= 1e-300;
                if (iter % 7 == 0) im = (i + j) % 2 ? -0.0 : 0.0;
                m(i, j) = Scalar(re, im);
            }
        const std::string text = matrix_to_json(m).dump();
        CHECK(bitwise_equal(matrix_from_json(parse_json_text(text)), m));
    }
}

TEST_CASE("real matrices serialize as plain numbers") {
    GenConfig cfg;
    cfg.seed = 3;
    cfg.dim = 3;
    const Json j = matrix_to_json(random_pd(cfg));
    for (const Json& e : j.at("entries")) CHECK(e.is_number());

    // And parse back to the same bits.
    CHECK(bitwise_equal(matrix_from_json(j), random_pd(cfg)));
}

TEST_CASE("block matrix JSON round-trips bit-exactly") {
    GenConfig cfg;
    cfg.seed = 4;
    cfg.n = 3;
    cfg.block_dim = 2;
    cfg.scalar_kind = ScalarKind::Complex;
    const BlockMatrix a = random_block_pd(cfg);
    const std::string text = block_matrix_to_json(a).dump();
    CHECK(bitwise_equal(block_matrix_from_json(parse_json_text(text)), a));
}

TEST_CASE("matrix JSON rejects malformed documents") {
    CHECK_THROWS_AS(matrix_from_json(parse_json_text("{\"rows\":2,\"cols\":2}")), Error);
    CHECK_THROWS_AS(matrix_from_json(parse_json_text(
                        "{\"rows\":2,\"cols\":2,\"entries\":[1,2,3]}")),
                    Error);
    CHECK_THROWS_AS(matrix_from_json(parse_json_text(
                        "{\"rows\":1,\"cols\":1,\"entries\":[[1,2,3]]}")),
                    Error);
    CHECK_THROWS_AS(matrix_from_json(parse_json_text(
                        "{\"rows\":0,\"cols\":1,\"entries\":[]}")),
                    Error);
    CHECK_THROWS_AS(parse_json_text("{not json"), Error);
}

TEST_CASE("reports round-trip including infinities") {
    InequalityReport rep;
    rep.name = "thm25";
    rep.lhs_log = 3.5;
    rep.rhs_log = kNegInfinity;
    rep.margin_log = kPosInfinity;
    rep.holds = true;
    rep.tol = 1e-8;
    BoundTerms t;
    t.mu = 2;
    t.ratio_terms = {0.25, 0.5};
    t.r_mu = 0.1;
    t.s_mu = 0.2;
    rep.terms.push_back(t);
    ChainLink link{"split_vs_full", 1.0, 0.5, 0.5, true};
    rep.links.push_back(link);
    rep.factored = Arrangement{3.5, 3.0, 0.5, true};
    rep.arrangement_gap = 1e-13;

    const Json j = report_to_json(rep);
    CHECK(j.at("rhsLog").get<std::string>() == "-inf");
    const InequalityReport back = report_from_json(j);
    CHECK(back.name == rep.name);
    CHECK(back.lhs_log == rep.lhs_log);
    CHECK(std::isinf(back.rhs_log));
    CHECK(back.rhs_log < 0);
    CHECK(std::isinf(back.margin_log));
    CHECK(back.margin_log > 0);
    CHECK(back.terms.size() == 1);
    CHECK(back.terms[0].ratio_terms == t.ratio_terms);
    CHECK(back.links.size() == 1);
    CHECK(back.links[0].name == "split_vs_full");
    REQUIRE(back.factored.has_value());
    CHECK(back.factored->rhs_log == 3.0);
    CHECK(back.arrangement_gap == rep.arrangement_gap);
}

TEST_CASE("value arrays accept bare and wrapped forms") {
    const auto bare = ge1_array_from_json(parse_json_text("[[2,3],[2,2]]"));
    CHECK(bare.size() == 2);
    CHECK(bare[0][1] == 3.0);
    const auto wrapped = ge1_array_from_json(parse_json_text("{\"values\":[[2,3]]}"));
    CHECK(wrapped.size() == 1);
    CHECK_THROWS_AS(ge1_array_from_json(parse_json_text("[]")), Error);
    CHECK_THROWS_AS(ge1_array_from_json(parse_json_text("[[1,\"x\"]]")), Error);
}

TEST_CASE("instances round-trip through JSON and replay identically") {
    SuiteConfig cfg;
    cfg.seed = 99;
    cfg.samples_per_bound = 1;
    for (const std::string& name : all_bound_names()) {
        const Instance inst = sample_instance(name, 0, cfg);
        const InequalityReport direct = evaluate_instance(inst);
        const Json j = instance_to_json(inst);
        const InequalityReport replayed = replay_instance(parse_json_text(j.dump()), "", -1.0);
        CHECK(replayed.margin_log == direct.margin_log);
        CHECK(replayed.lhs_log == direct.lhs_log);
        CHECK(replayed.rhs_log == direct.rhs_log);
        CHECK(replayed.holds == direct.holds);
    }
}
