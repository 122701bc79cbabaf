#include "rsconn/connection.hpp"

#include <algorithm>
#include <map>
#include <string>

namespace rsconn {

std::string_view flavor_name(Flavor f) {
  switch (f) {
    case Flavor::Logarithmic: return "logarithmic";
    case Flavor::Formal: return "formal";
    case Flavor::Algebraic: return "algebraic";
  }
  return "unknown";
}

Flavor parse_flavor(std::string_view name) {
  if (name == "logarithmic") return Flavor::Logarithmic;
  if (name == "formal") return Flavor::Formal;
  if (name == "algebraic") return Flavor::Algebraic;
  fail(ErrorKind::ValidationError, "unknown flavor '" + std::string(name) + "'");
}

bool has_no_poles(const SeriesMatrix& a) {
  return std::all_of(a.data().begin(), a.data().end(), [](const LaurentSeries& s) {
    if (!s.exact() && s.hi() < -1) return false;
    auto v = s.valuation();
    return !v || *v >= 0;
  });
}

Connection::Connection(Flavor flavor, SeriesMatrix a) : flavor_(flavor), a_(std::move(a)) {
  if (!a_.is_square()) fail(ErrorKind::ValidationError, "connection matrix must be square");
  const int m = a_(0, 0).t_order();
  for (const auto& s : a_.data())
    if (s.t_order() != m) fail(ErrorKind::ValidationError, "connection entries must share one t_order");
  if (flavor_ == Flavor::Logarithmic && !has_no_poles(a_))
    fail(ErrorKind::ValidationError, "logarithmic connection matrix has a pole in x");
  if (flavor_ == Flavor::Algebraic && !all_exact(a_))
    fail(ErrorKind::ValidationError, "algebraic connection matrix must be an exact Laurent polynomial");
}

Gauge Gauge::identity(int n, int t_order) {
  return Gauge{identity_series(n, t_order), identity_series(n, t_order)};
}

Gauge Gauge::constant(const RMatrix& s0) { return Gauge{constant_series(s0), constant_series(inverse_r(s0))}; }

Gauge Gauge::scalar_shift(int n, int t_order, int k) {
  return Gauge{scalar_times(LaurentSeries::monomial(RingElem::one(t_order), k), identity_series(n, t_order)),
               scalar_times(LaurentSeries::monomial(RingElem::one(t_order), -k), identity_series(n, t_order))};
}

std::optional<int> Gauge::window() const {
  auto a = precision(s), b = precision(s_inv);
  if (a && b) return std::min(*a, *b);
  return a ? a : b;
}

bool Gauge::verify_inverse(std::optional<int> through) const {
  const int n = rank();
  const int m = s(0, 0).t_order();
  const SeriesMatrix id = identity_series(n, m);
  for (const SeriesMatrix& d : {SeriesMatrix(s * s_inv - id), SeriesMatrix(s_inv * s - id)}) {
    if (through) {
      if (!vanishes_through(d, *through)) return false;
    } else if (auto p = precision(d)) {
      if (!vanishes_through(d, *p)) return false;
    } else if (min_valuation(d)) {
      return false;
    }
  }
  return true;
}

Gauge compose(const Gauge& first, const Gauge& second) {
  return Gauge{first.s * second.s, second.s_inv * first.s_inv};
}

Connection eul_formal(const EndObject& obj) { return Connection(Flavor::Logarithmic, constant_series(obj.a)); }

Connection eul_algebraic(const EndObject& obj) { return Connection(Flavor::Algebraic, constant_series(obj.a)); }

RMatrix residue(const Connection& conn) {
  if (conn.flavor() != Flavor::Logarithmic)
    fail(ErrorKind::NotLogarithmic, "residue needs a logarithmic connection, got " +
                                        std::string(flavor_name(conn.flavor())));
  return x_layer(conn.matrix(), 0);
}

Exponents exponents(const Connection& conn) { return residue_spectrum(residue(conn)); }

Connection gauge_apply(const Connection& conn, const Gauge& g) {
  if (g.rank() != conn.rank()) fail(ErrorKind::Structural, "gauge rank does not match connection rank");
  SeriesMatrix a = g.s_inv * conn.matrix() * g.s + g.s_inv * theta(g.s);
  Flavor f;
  if (conn.flavor() == Flavor::Algebraic && all_exact(a)) f = Flavor::Algebraic;
  else f = has_no_poles(a) ? Flavor::Logarithmic : Flavor::Formal;
  return Connection(f, std::move(a));
}

Connection restrict(const Connection& conn, int n) {
  if (conn.flavor() != Flavor::Algebraic)
    fail(ErrorKind::PreconditionFailed, "restrict expects an algebraic connection");
  SeriesMatrix a = truncated(conn.matrix(), n);
  const Flavor f = has_no_poles(a) ? Flavor::Logarithmic : Flavor::Formal;
  return Connection(f, std::move(a));
}

SeriesVector nabla(const Connection& conn, const SeriesVector& v) {
  SeriesVector out = apply(conn.matrix(), v);
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = theta(v[i]) + out[i];
  return out;
}

bool leibniz_check(const NablaAction& action, const LaurentSeries& f, const SeriesVector& v) {
  SeriesVector fv;
  for (const auto& e : v) fv.push_back(f * e);
  const SeriesVector lhs = action(fv);
  const SeriesVector nv = action(v);
  const LaurentSeries df = theta(f);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const LaurentSeries diff = lhs[i] - (df * v[i] + f * nv[i]);
    if (!diff.is_zero()) return false;
  }
  return true;
}

bool leibniz_check(const Connection& conn, const LaurentSeries& f, const SeriesVector& v) {
  return leibniz_check([&conn](const SeriesVector& w) { return nabla(conn, w); }, f, v);
}

SeriesMatrix morphism_residual(const SeriesMatrix& h, const SeriesMatrix& src, const SeriesMatrix& dst) {
  return theta(h) + dst * h - h * src;
}

bool in_unit_window(const Rational& r) { return r.sign() >= 0 && r < Rational(1); }

Exponents exponents_mod_z(const Exponents& e) {
  std::map<Rational, int> acc;
  for (const auto& [root, mult] : e) acc[root - Rational(root.floor())] += mult;
  Exponents out;
  for (const auto& [root, mult] : acc) out.push_back({root, mult});
  return out;
}

int total_multiplicity(const Exponents& e) {
  int n = 0;
  for (const auto& r : e) n += r.multiplicity;
  return n;
}

}  // namespace rsconn
