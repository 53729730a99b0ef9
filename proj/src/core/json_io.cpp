#include "core/json_io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>

namespace blockdet {

namespace {

bool is_positive_zero(double v) {
    return std::bit_cast<std::uint64_t>(v) == std::bit_cast<std::uint64_t>(0.0);
}

double number_from_json(const Json& j, const char* what) {
    if (!j.is_number())
        throw Error(ErrorCode::ParseError, std::string(what) + ": expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v))
        throw Error(ErrorCode::NonFiniteEntry, std::string(what) + ": value must be finite");
    return v;
}

std::size_t index_from_json(const Json& j, const char* what) {
    if (!j.is_number_unsigned() || j.get<std::uint64_t>() == 0)
        throw Error(ErrorCode::ParseError, std::string(what) + ": expected a positive integer");
    return static_cast<std::size_t>(j.get<std::uint64_t>());
}

} // namespace

Json matrix_to_json(const Matrix& a) {
    Json entries = Json::array();
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Scalar v = a(i, j);
            if (is_positive_zero(v.imag()))
                entries.push_back(v.real());
            else
                entries.push_back(Json::array({v.real(), v.imag()}));
        }
    return Json{{"rows", a.rows()}, {"cols", a.cols()}, {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw Error(ErrorCode::ParseError, "matrix: expected {rows, cols, entries}");
    const std::size_t rows = index_from_json(j.at("rows"), "matrix rows");
    const std::size_t cols = index_from_json(j.at("cols"), "matrix cols");
    const Json& entries = j.at("entries");
    if (!entries.is_array() || entries.size() != rows * cols)
        throw Error(ErrorCode::ParseError, "matrix: entries must hold rows*cols values");
    std::vector<Scalar> data;
    data.reserve(rows * cols);
    for (const Json& e : entries) {
        if (e.is_array()) {
            if (e.size() != 2)
                throw Error(ErrorCode::ParseError, "matrix: complex entries are [re, im]");
            data.emplace_back(number_from_json(e[0], "matrix entry"),
                              number_from_json(e[1], "matrix entry"));
        } else {
            data.emplace_back(number_from_json(e, "matrix entry"), 0.0);
        }
    }
    return Matrix(rows, cols, std::move(data));
}

Json block_matrix_to_json(const BlockMatrix& a) {
    Json grid = Json::array();
    for (std::size_t i = 0; i < a.order(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < a.order(); ++j)
            row.push_back(matrix_to_json(a.block(i, j)));
        grid.push_back(std::move(row));
    }
    return Json{{"n", a.order()},
                {"p", a.block_rows()},
                {"q", a.block_cols()},
                {"blocks", std::move(grid)}};
}

BlockMatrix block_matrix_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("p") || !j.contains("q") ||
        !j.contains("blocks"))
        throw Error(ErrorCode::ParseError, "block matrix: expected {n, p, q, blocks}");
    const std::size_t n = index_from_json(j.at("n"), "block matrix n");
    const std::size_t p = index_from_json(j.at("p"), "block matrix p");
    const std::size_t q = index_from_json(j.at("q"), "block matrix q");
    const Json& grid = j.at("blocks");
    if (!grid.is_array() || grid.size() != n)
        throw Error(ErrorCode::ParseError, "block matrix: blocks must be an n x n grid");
    std::vector<Matrix> blocks;
    blocks.reserve(n * n);
    for (const Json& row : grid) {
        if (!row.is_array() || row.size() != n)
            throw Error(ErrorCode::ParseError, "block matrix: blocks must be an n x n grid");
        for (const Json& cell : row) {
            Matrix b = matrix_from_json(cell);
            if (b.rows() != p || b.cols() != q)
                throw Error(ErrorCode::ParseError, "block matrix: every block must be p x q");
            blocks.push_back(std::move(b));
        }
    }
    return BlockMatrix(n, p, q, std::move(blocks));
}

Json log_value_to_json(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

double log_value_from_json(const Json& j) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return kPosInfinity;
        if (s == "-inf") return kNegInfinity;
        if (s == "nan") return std::nan("");
        throw Error(ErrorCode::ParseError, "log value: unknown string '" + s + "'");
    }
    if (!j.is_number())
        throw Error(ErrorCode::ParseError, "log value: expected number or inf string");
    return j.get<double>();
}

Json report_to_json(const InequalityReport& rep) {
    Json out{{"name", rep.name},
             {"lhsLog", log_value_to_json(rep.lhs_log)},
             {"rhsLog", log_value_to_json(rep.rhs_log)},
             {"marginLog", log_value_to_json(rep.margin_log)},
             {"holds", rep.holds},
             {"tol", rep.tol}};
    if (!rep.terms.empty()) {
        Json terms = Json::array();
        for (const BoundTerms& t : rep.terms) {
            Json ratios = Json::array();
            for (double r : t.ratio_terms) ratios.push_back(log_value_to_json(r));
            terms.push_back(Json{{"mu", t.mu},
                                 {"ratioTerms", std::move(ratios)},
                                 {"rMu", log_value_to_json(t.r_mu)},
                                 {"sMu", log_value_to_json(t.s_mu)}});
        }
        out["terms"] = std::move(terms);
    }
    if (!rep.links.empty()) {
        Json links = Json::array();
        for (const ChainLink& l : rep.links)
            links.push_back(Json{{"name", l.name},
                                 {"lhsLog", log_value_to_json(l.lhs_log)},
                                 {"rhsLog", log_value_to_json(l.rhs_log)},
                                 {"marginLog", log_value_to_json(l.margin_log)},
                                 {"holds", l.holds}});
        out["links"] = std::move(links);
    }
    if (rep.factored) {
        out["factored"] = Json{{"lhsLog", log_value_to_json(rep.factored->lhs_log)},
                               {"rhsLog", log_value_to_json(rep.factored->rhs_log)},
                               {"marginLog", log_value_to_json(rep.factored->margin_log)},
                               {"holds", rep.factored->holds}};
    }
    if (rep.arrangement_gap)
        out["arrangementGap"] = log_value_to_json(*rep.arrangement_gap);
    return out;
}

InequalityReport report_from_json(const Json& j) {
    if (!j.is_object())
        throw Error(ErrorCode::ParseError, "report: expected an object");
    InequalityReport rep;
    rep.name = j.at("name").get<std::string>();
    rep.lhs_log = log_value_from_json(j.at("lhsLog"));
    rep.rhs_log = log_value_from_json(j.at("rhsLog"));
    rep.margin_log = log_value_from_json(j.at("marginLog"));
    rep.holds = j.at("holds").get<bool>();
    rep.tol = j.at("tol").get<double>();
    if (j.contains("terms"))
        for (const Json& t : j.at("terms")) {
            BoundTerms bt;
            bt.mu = t.at("mu").get<std::size_t>();
            for (const Json& r : t.at("ratioTerms"))
                bt.ratio_terms.push_back(log_value_from_json(r));
            bt.r_mu = log_value_from_json(t.at("rMu"));
            bt.s_mu = log_value_from_json(t.at("sMu"));
            rep.terms.push_back(std::move(bt));
        }
    if (j.contains("links"))
        for (const Json& l : j.at("links")) {
            ChainLink link;
            link.name = l.at("name").get<std::string>();
            link.lhs_log = log_value_from_json(l.at("lhsLog"));
            link.rhs_log = log_value_from_json(l.at("rhsLog"));
            link.margin_log = log_value_from_json(l.at("marginLog"));
            link.holds = l.at("holds").get<bool>();
            rep.links.push_back(std::move(link));
        }
    if (j.contains("factored")) {
        Arrangement alt;
        const Json& f = j.at("factored");
        alt.lhs_log = log_value_from_json(f.at("lhsLog"));
        alt.rhs_log = log_value_from_json(f.at("rhsLog"));
        alt.margin_log = log_value_from_json(f.at("marginLog"));
        alt.holds = f.at("holds").get<bool>();
        rep.factored = alt;
    }
    if (j.contains("arrangementGap"))
        rep.arrangement_gap = log_value_from_json(j.at("arrangementGap"));
    return rep;
}

Json ge1_array_to_json(const std::vector<std::vector<double>>& rows) {
    Json out = Json::array();
    for (const auto& row : rows) {
        Json r = Json::array();
        for (double v : row) r.push_back(v);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<std::vector<double>> ge1_array_from_json(const Json& j) {
    const Json* rows = &j;
    if (j.is_object() && j.contains("values")) rows = &j.at("values");
    if (!rows->is_array() || rows->empty())
        throw Error(ErrorCode::ParseError, "array: expected a non-empty array of rows");
    std::vector<std::vector<double>> out;
    for (const Json& row : *rows) {
        if (!row.is_array())
            throw Error(ErrorCode::ParseError, "array: rows must be arrays of numbers");
        std::vector<double> r;
        for (const Json& v : row) r.push_back(number_from_json(v, "array entry"));
        out.push_back(std::move(r));
    }
    return out;
}

Json parse_json_text(const std::string& text) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded())
        throw Error(ErrorCode::ParseError, "invalid JSON");
    return j;
}

} // namespace blockdet
