#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "core/block_matrix.hpp"
#include "core/matrix.hpp"
#include "core/report.hpp"

namespace blockdet {

using Json = nlohmann::ordered_json;

/// {"rows": r, "cols": c, "entries": [[re, im] | re, ...]} row-major.
/// Real entries (imaginary part bitwise +0.0) are written as plain numbers;
/// doubles round-trip bit-exactly through the shortest decimal form.
Json matrix_to_json(const Matrix& a);
Matrix matrix_from_json(const Json& j);

/// {"n": n, "p": p, "q": q, "blocks": [[matrix, ...], ...]}.
Json block_matrix_to_json(const BlockMatrix& a);
BlockMatrix block_matrix_from_json(const Json& j);

/// Infinite log values are encoded as the strings "inf"/"-inf" (plain JSON
/// has no infinity literal).
Json log_value_to_json(double v);
double log_value_from_json(const Json& j);

Json report_to_json(const InequalityReport& rep);
InequalityReport report_from_json(const Json& j);

Json ge1_array_to_json(const std::vector<std::vector<double>>& rows);
std::vector<std::vector<double>> ge1_array_from_json(const Json& j);

Json parse_json_text(const std::string& text);

} // namespace blockdet
