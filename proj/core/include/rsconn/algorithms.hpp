#pragma once

#include <vector>

#include "rsconn/connection.hpp"

namespace rsconn {

/// Representatives [0, 1) of Q/Z used to pin exponents.
struct NormalizationWindow {
  static bool contains(const Rational& r) { return in_unit_window(r); }
  /// The integer k with r + k in [0, 1).
  static long shift_for(const Rational& r) { return -r.floor(); }
};

struct ShearStep {
  Rational rho;
  int direction = 0;
  friend bool operator==(const ShearStep&, const ShearStep&) = default;
};

struct ShearResult {
  Connection conn;
  Gauge gauge;
  std::vector<ShearStep> steps;
};

/// S = x^direction * e + (I - e) for a projector e, with its exact inverse.
Gauge shear_gauge(const RMatrix& projector, int direction);

/// One shear moving the exponent rho one unit toward [0, 1).
/// Throws PreconditionFailed if rho is not an exponent, already lies in [0, 1),
/// or direction points away from the window.
ShearResult unit_shear(const Connection& conn, const Rational& rho, int direction);

/// Repeated unit shears until every exponent lies in [0, 1). Exponents are
/// processed smallest required |shift| first, ties by ascending value.
ShearResult shear_normalize(const Connection& conn);

struct EulerFormResult {
  EndObject euler;
  Gauge gauge;
  int certified_to = 0;
};

/// Gauge P with P(0) = I and theta(P) + A P - P A0 = 0 through x^N, where A0 is
/// the residue. Throws ResonantExponents if some j in 1..N is a difference of
/// residue eigenvalues.
EulerFormResult euler_form(const Connection& conn, int n);

/// theta(P) + A P - P A0 for a computed Euler form.
SeriesMatrix euler_residual(const Connection& conn, const EulerFormResult& result);

/// Basis (over Q) of solutions h with valuation >= lo of theta(h) + A h = 0
/// through x^N. Cross-checks the dimension on a window widened by two on each
/// open side and throws PrecisionExhausted on disagreement.
std::vector<SeriesVector> horizontal_sections(const Connection& conn, int lo, int n);

struct HomBasis {
  std::vector<SeriesMatrix> basis;
  int lo = 0;
  int hi = 0;
  /// Some basis element depends on x, so it does not come from a map V -> W.
  bool has_nonconstant() const;
};

/// Q-basis of matrices h with theta(h) = h A - B h on the window [lo, N], i.e.
/// morphisms eul(V, A) -> eul(W, B) over R((x)).
HomBasis hom_space(const EndObject& src, const EndObject& dst, int lo, int n);

struct AlgebraizeResult {
  Connection algebraic;
  Gauge gauge;
  int certified_to = 0;
  std::vector<ShearStep> steps;
};

/// Algebraic Euler connection whose restriction is gauge-isomorphic to `conn`
/// through x^N, via shear_normalize followed by euler_form.
AlgebraizeResult algebraize(const Connection& conn, int n);

/// Re-checks a certificate: theta(S) + A S - S A0 and S S_inv - I vanish through x^N.
bool verify_certificate(const Connection& input, const RMatrix& a0, const Gauge& gauge, int n);

struct SaturationResult {
  Connection conn;
  Gauge gauge;
  int rounds = 0;
};

/// Field-base search for a logarithmic model by iterating L <- L + nabla(L)
/// from the standard lattice, at most `bound` rounds. Throws NotRecognized when
/// the bound is exhausted and Unsupported when t_order > 1.
SaturationResult saturate_log_model(const Connection& conn, int bound, int n);

}  // namespace rsconn
