#pragma once

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "rsconn/linalg.hpp"

namespace rsconn {

/// Which category a connection matrix lives in.
///  - Logarithmic: matrix over R[[x]] (no poles); a logarithmic model.
///  - Formal: matrix over R((x)), finite pole order.
///  - Algebraic: exact Laurent polynomial matrix over R[x, 1/x].
enum class Flavor { Logarithmic, Formal, Algebraic };

std::string_view flavor_name(Flavor f);
Flavor parse_flavor(std::string_view name);

/// The connection nabla = theta + A(x) on a free module of rank n, in a chosen basis.
class Connection {
 public:
  /// Validates the flavor invariants; throws ValidationError naming the broken one.
  Connection(Flavor flavor, SeriesMatrix a);

  Flavor flavor() const { return flavor_; }
  int rank() const { return a_.rows(); }
  int t_order() const { return a_(0, 0).t_order(); }
  const SeriesMatrix& matrix() const { return a_; }
  /// Smallest x-precision of a windowed entry; nullopt when all entries are exact.
  std::optional<int> x_precision() const { return precision(a_); }

  friend bool operator==(const Connection&, const Connection&) = default;

 private:
  Flavor flavor_;
  SeriesMatrix a_;
};

/// True iff every entry is known to have no negative powers of x.
bool has_no_poles(const SeriesMatrix& a);

/// An object (V, A) of End_R: a free module with an endomorphism.
struct EndObject {
  RMatrix a;
  int rank() const { return a.rows(); }
  int t_order() const { return t_order_of(a); }
  friend bool operator==(const EndObject&, const EndObject&) = default;
};

/// An invertible change of basis v = S w with a certified inverse.
struct Gauge {
  SeriesMatrix s;
  SeriesMatrix s_inv;

  static Gauge identity(int n, int t_order);
  /// Constant gauge; the inverse is computed exactly over R.
  static Gauge constant(const RMatrix& s0);
  /// x^k * I
  static Gauge scalar_shift(int n, int t_order, int k);

  int rank() const { return s.rows(); }
  std::optional<int> window() const;
  bool exact() const { return all_exact(s) && all_exact(s_inv); }
  /// S * S_inv and S_inv * S equal the identity through x^n (exactly, if both exact).
  bool verify_inverse(std::optional<int> through = std::nullopt) const;
};

/// First apply `first`, then `second`: the composite S = S_first * S_second.
Gauge compose(const Gauge& first, const Gauge& second);

using Exponents = std::vector<RootMultiplicity>;

Connection eul_formal(const EndObject& obj);
Connection eul_algebraic(const EndObject& obj);

/// A(0); throws NotLogarithmic unless the connection is logarithmic.
RMatrix residue(const Connection& conn);
/// Eigenvalues of the residue mod t, with multiplicity.
Exponents exponents(const Connection& conn);

/// A' = S^-1 A S + S^-1 theta(S). The flavor is recomputed from the result.
Connection gauge_apply(const Connection& conn, const Gauge& g);

/// Reads an algebraic connection as a formal one known through x^n.
Connection restrict(const Connection& conn, int n);

/// nabla(v) = theta(v) + A v, componentwise.
SeriesVector nabla(const Connection& conn, const SeriesVector& v);

using NablaAction = std::function<SeriesVector(const SeriesVector&)>;
/// Leibniz rule nabla(f v) = theta(f) v + f nabla(v) on the common window.
bool leibniz_check(const NablaAction& action, const LaurentSeries& f, const SeriesVector& v);
bool leibniz_check(const Connection& conn, const LaurentSeries& f, const SeriesVector& v);

/// theta(h) + B h - h A: zero iff h is a morphism from (theta + A) to (theta + B).
SeriesMatrix morphism_residual(const SeriesMatrix& h, const SeriesMatrix& src, const SeriesMatrix& dst);

/// Multiset of exponents reduced into [0, 1), ascending.
Exponents exponents_mod_z(const Exponents& e);
bool in_unit_window(const Rational& r);
int total_multiplicity(const Exponents& e);

}  // namespace rsconn
