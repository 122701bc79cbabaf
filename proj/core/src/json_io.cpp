#include "rsconn/json_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace rsconn::io {

namespace {

[[noreturn]] void shape(const std::string& path, const std::string& what) {
  fail(ErrorKind::ParseError, path + ": " + what);
}

[[noreturn]] void invalid(const std::string& path, const std::string& what) {
  fail(ErrorKind::ValidationError, path + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) shape(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) shape(path, std::string("missing field '") + key + "'");
  return *it;
}

int int_from_json(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) shape(path, "expected an integer");
  const auto v = j.get<std::int64_t>();
  if (v < std::numeric_limits<int>::min() / 4 || v > std::numeric_limits<int>::max() / 4)
    invalid(path, "integer out of range");
  return static_cast<int>(v);
}

int positive_from_json(const Json& j, const std::string& path, int max) {
  const int v = int_from_json(j, path);
  if (v < 1 || v > max) invalid(path, "expected an integer in [1, " + std::to_string(max) + "]");
  return v;
}

const Json& array(const Json& j, const std::string& path) {
  if (!j.is_array()) shape(path, "expected an array");
  return j;
}

std::string at(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

template <typename T, typename F>
Matrix<T> matrix_from_json(const Json& j, const std::string& path, F&& entry) {
  const Json& rows = array(j, path);
  if (rows.empty()) invalid(path, "matrix needs at least one row");
  const std::size_t cols = array(rows[0], at(path, 0)).size();
  if (cols == 0) invalid(path, "matrix needs at least one column");
  std::vector<T> data;
  data.reserve(rows.size() * cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Json& row = array(rows[r], at(path, r));
    if (row.size() != cols) invalid(at(path, r), "ragged matrix row");
    for (std::size_t c = 0; c < cols; ++c) data.push_back(entry(row[c], at(at(path, r), c)));
  }
  return Matrix<T>(static_cast<int>(rows.size()), static_cast<int>(cols), std::move(data));
}

template <typename T>
Json matrix_to_json(const Matrix<T>& a) {
  Json rows = Json::array();
  for (int r = 0; r < a.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < a.cols(); ++c) row.push_back(to_json(a(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json optional_int(std::optional<int> v) { return v ? Json(*v) : Json(nullptr); }

bool is_flat(const Json& j) {
  for (const auto& e : j)
    if (e.is_structured()) return false;
  return true;
}

// Arrays nesting at most two deep and holding no objects fit on one line.
bool is_inline(const Json& j) {
  for (const auto& e : j)
    if (e.is_object() || (e.is_array() && !is_flat(e))) return false;
  return true;
}

// Short arrays stay on one line; everything else is indented.
void write(std::ostringstream& os, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) os << ",\n";
      first = false;
      os << pad << Json(it.key()).dump() << ": ";
      write(os, it.value(), indent + 2);
    }
    os << "\n" << std::string(static_cast<std::size_t>(indent), ' ') << "}";
  } else if (j.is_array()) {
    if (is_inline(j)) {
      os << "[";
      for (std::size_t i = 0; i < j.size(); ++i) {
        os << (i ? ", " : "");
        write(os, j[i], indent);
      }
      os << "]";
      return;
    }
    os << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) os << ",\n";
      os << pad;
      write(os, j[i], indent + 2);
    }
    os << "\n" << std::string(static_cast<std::size_t>(indent), ' ') << "]";
  } else {
    os << j.dump();
  }
}

}  // namespace

Json to_json(const Rational& r) { return r.str(); }

Json to_json(const RingElem& r) {
  Json out = Json::array();
  for (const auto& c : r.coeffs()) out.push_back(c.str());
  return out;
}

Json to_json(const LaurentSeries& s) {
  Json terms = Json::array();
  for (const auto& [k, c] : s.terms()) terms.push_back(Json::array({k, to_json(c)}));
  Json out = Json::object();
  out["exact"] = s.exact();
  out["hi"] = s.hi();
  out["terms"] = std::move(terms);
  return out;
}

Json to_json(const RMatrix& a) { return matrix_to_json(a); }
Json to_json(const SeriesMatrix& a) { return matrix_to_json(a); }

Json to_json(const Connection& c) {
  Json out = Json::object();
  out["flavor"] = std::string(flavor_name(c.flavor()));
  out["rank"] = c.rank();
  out["t_order"] = c.t_order();
  out["x_precision"] = optional_int(c.x_precision());
  out["matrix"] = to_json(c.matrix());
  return out;
}

Json to_json(const EndObject& e) {
  Json out = Json::object();
  out["rank"] = e.rank();
  out["t_order"] = e.t_order();
  out["A"] = to_json(e.a);
  return out;
}

Json to_json(const Gauge& g) {
  Json out = Json::object();
  out["S"] = to_json(g.s);
  out["S_inv"] = to_json(g.s_inv);
  out["window"] = optional_int(g.window());
  return out;
}

Json to_json(const Exponents& e) {
  Json out = Json::array();
  for (const auto& r : e) {
    Json item = Json::object();
    item["value"] = r.root.str();
    item["multiplicity"] = r.multiplicity;
    out.push_back(std::move(item));
  }
  return out;
}

Json to_json(const EulerFormResult& r) {
  Json out = Json::object();
  out["euler"] = to_json(r.euler);
  out["gauge"] = to_json(r.gauge);
  out["certified_to"] = r.certified_to;
  return out;
}

Json to_json(const HomBasis& h) {
  Json basis = Json::array();
  for (const auto& b : h.basis) basis.push_back(to_json(b));
  Json out = Json::object();
  out["window"] = Json::array({h.lo, h.hi});
  out["dimension"] = h.basis.size();
  out["basis"] = std::move(basis);
  return out;
}

Rational rational_from_json(const Json& j, const std::string& path) {
  if (!j.is_string()) shape(path, "expected a rational string \"p/q\"");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const Error& e) {
    shape(path, e.what());
  }
}

RingElem ring_elem_from_json(const Json& j, int t_order, const std::string& path) {
  const Json& a = array(j, path);
  if (static_cast<int>(a.size()) != t_order)
    invalid(path, "ring element has " + std::to_string(a.size()) + " coefficients, t_order is " +
                      std::to_string(t_order));
  std::vector<Rational> cs;
  for (std::size_t i = 0; i < a.size(); ++i) cs.push_back(rational_from_json(a[i], at(path, i)));
  return RingElem(t_order, std::move(cs));
}

LaurentSeries series_from_json(const Json& j, int t_order, const std::string& path) {
  const Json& ex = field(j, "exact", path);
  if (!ex.is_boolean()) shape(path + ".exact", "expected a boolean");
  const bool exact = ex.get<bool>();
  const int hi = int_from_json(field(j, "hi", path), path + ".hi");
  const Json& ts = array(field(j, "terms", path), path + ".terms");
  std::vector<std::pair<int, RingElem>> terms;
  std::optional<int> last;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const std::string p = at(path + ".terms", i);
    const Json& t = array(ts[i], p);
    if (t.size() != 2) shape(p, "a term is [exponent, coefficient]");
    const int k = int_from_json(t[0], p + "[0]");
    if (last && k <= *last) invalid(p, "term exponents must be strictly increasing");
    if (k > hi) invalid(p, "term exponent " + std::to_string(k) + " lies above hi = " + std::to_string(hi));
    last = k;
    terms.emplace_back(k, ring_elem_from_json(t[1], t_order, p + "[1]"));
  }
  return exact ? LaurentSeries::exact_poly(t_order, terms) : LaurentSeries::windowed(t_order, hi, terms);
}

RMatrix rmatrix_from_json(const Json& j, int t_order, const std::string& path) {
  return matrix_from_json<RingElem>(
      j, path, [&](const Json& e, const std::string& p) { return ring_elem_from_json(e, t_order, p); });
}

SeriesMatrix series_matrix_from_json(const Json& j, int t_order, const std::string& path) {
  return matrix_from_json<LaurentSeries>(
      j, path, [&](const Json& e, const std::string& p) { return series_from_json(e, t_order, p); });
}

Connection connection_from_json(const Json& j, const std::string& path) {
  const Json& fl = field(j, "flavor", path);
  if (!fl.is_string()) shape(path + ".flavor", "expected a string");
  Flavor flavor;
  try {
    flavor = parse_flavor(fl.get<std::string>());
  } catch (const Error& e) {
    invalid(path + ".flavor", e.what());
  }
  const int rank = positive_from_json(field(j, "rank", path), path + ".rank", 64);
  const int t_order = positive_from_json(field(j, "t_order", path), path + ".t_order", 64);
  const Json& xp = field(j, "x_precision", path);
  std::optional<int> declared;
  if (!xp.is_null()) declared = int_from_json(xp, path + ".x_precision");
  SeriesMatrix a = series_matrix_from_json(field(j, "matrix", path), t_order, path + ".matrix");
  if (a.rows() != rank || a.cols() != rank)
    invalid(path + ".matrix", "matrix is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                  ", rank is " + std::to_string(rank));
  if (precision(a) != declared) invalid(path + ".x_precision", "does not match the smallest entry window");
  try {
    return Connection(flavor, std::move(a));
  } catch (const Error& e) {
    invalid(path, e.what());
  }
}

EndObject end_object_from_json(const Json& j, const std::string& path) {
  const int rank = positive_from_json(field(j, "rank", path), path + ".rank", 64);
  const int t_order = positive_from_json(field(j, "t_order", path), path + ".t_order", 64);
  RMatrix a = rmatrix_from_json(field(j, "A", path), t_order, path + ".A");
  if (a.rows() != rank || a.cols() != rank) invalid(path + ".A", "matrix shape does not match rank");
  return EndObject{std::move(a)};
}

Gauge gauge_from_json(const Json& j, int t_order, const std::string& path) {
  SeriesMatrix s = series_matrix_from_json(field(j, "S", path), t_order, path + ".S");
  SeriesMatrix s_inv = series_matrix_from_json(field(j, "S_inv", path), t_order, path + ".S_inv");
  if (!s.is_square() || s.rows() != s_inv.rows() || s.cols() != s_inv.cols())
    invalid(path, "S and S_inv must be square of equal size");
  return Gauge{std::move(s), std::move(s_inv)};
}

Json parse_text(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte, text.size());
    for (std::size_t i = 0; i + 1 < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    fail(ErrorKind::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) +
                                    ": malformed JSON");
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) fail(ErrorKind::IoError, "cannot read " + path.string());
  return ss.str();
}

Connection parse_connection(std::string_view text) { return connection_from_json(parse_text(text)); }

Connection parse_connection_file(const std::filesystem::path& path) { return parse_connection(read_file(path)); }

std::string dump(const Json& j) {
  std::ostringstream os;
  write(os, j, 0);
  os << "\n";
  return os.str();
}

}  // namespace rsconn::io
