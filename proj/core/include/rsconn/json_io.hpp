#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "rsconn/algorithms.hpp"

namespace rsconn::io {

/// Key order is preserved so that serialized output is canonical.
using Json = nlohmann::ordered_json;

Json to_json(const Rational& r);
Json to_json(const RingElem& r);
Json to_json(const LaurentSeries& s);
Json to_json(const RMatrix& a);
Json to_json(const SeriesMatrix& a);
Json to_json(const Connection& c);
Json to_json(const EndObject& e);
Json to_json(const Gauge& g);
Json to_json(const Exponents& e);
Json to_json(const EulerFormResult& r);
Json to_json(const HomBasis& h);

// Readers take a dotted path used in error messages. Shape problems raise
// ParseError; broken invariants raise ValidationError.
Rational rational_from_json(const Json& j, const std::string& path);
RingElem ring_elem_from_json(const Json& j, int t_order, const std::string& path);
LaurentSeries series_from_json(const Json& j, int t_order, const std::string& path);
RMatrix rmatrix_from_json(const Json& j, int t_order, const std::string& path);
SeriesMatrix series_matrix_from_json(const Json& j, int t_order, const std::string& path);
Connection connection_from_json(const Json& j, const std::string& path = "$");
EndObject end_object_from_json(const Json& j, const std::string& path = "$");
Gauge gauge_from_json(const Json& j, int t_order, const std::string& path);

/// Parses JSON text; syntax errors report line and column.
Json parse_text(std::string_view text);
std::string read_file(const std::filesystem::path& path);

Connection parse_connection(std::string_view text);
Connection parse_connection_file(const std::filesystem::path& path);

/// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

}  // namespace rsconn::io
