#pragma once

#include <optional>
#include <vector>

#include "rsconn/matrix.hpp"
#include "rsconn/poly.hpp"
#include "rsconn/series.hpp"

namespace rsconn {

using QMatrix = Matrix<Rational>;
using RMatrix = Matrix<RingElem>;
using SeriesMatrix = Matrix<LaurentSeries>;
using QVector = std::vector<Rational>;
using RVector = std::vector<RingElem>;
using SeriesVector = std::vector<LaurentSeries>;

// ---- construction and reduction -------------------------------------------

RMatrix identity_r(int n, int t_order);
RMatrix zero_r(int rows, int cols, int t_order);
int t_order_of(const RMatrix& a);
/// The t^k coefficient matrix, over Q.
QMatrix t_layer(const RMatrix& a, int k);
inline QMatrix residue_matrix(const RMatrix& a) { return t_layer(a, 0); }
/// Embeds a rational matrix as a constant (t-free) matrix over Q[t]/(t^m).
RMatrix embed(const QMatrix& a, int t_order);
RMatrix scale(const RMatrix& a, const RingElem& s);

// ---- over Q ----------------------------------------------------------------

QMatrix identity_q(int n);
/// Reduced row echelon form; returns the pivot columns.
std::vector<int> row_reduce(QMatrix& a);
int rank_q(QMatrix a);
/// Inverse over Q; nullopt when singular.
std::optional<QMatrix> inverse_q(const QMatrix& a);
/// Basis of {v : M v = 0}, one vector per free column of the echelon form.
std::vector<QVector> nullspace_rational(const QMatrix& m);

// ---- over R = Q[t]/(t^m) ---------------------------------------------------

/// Characteristic polynomial det(T*I - A), monic of degree n.
Poly char_poly(const RMatrix& a);
/// p(A) by Horner's rule.
RMatrix evaluate(const Poly& p, const RMatrix& a);

/// Solves M X = B exactly by solving the residue system and correcting one
/// t-layer at a time. Throws SingularResidue when M mod t is singular.
RMatrix solve_linear_over_ring(const RMatrix& m, const RMatrix& b);
RVector solve_linear_over_ring(const RMatrix& m, const RVector& b);
RMatrix inverse_r(const RMatrix& a);

/// Solves lambda*X + A0*X - X*A0 = C. Throws ResonantExponents when
/// lambda + rho_i - rho_j vanishes for residue eigenvalues of A0.
RMatrix sylvester_solve(const RMatrix& a0, const Rational& lambda, const RMatrix& c);

/// Eigenvalues of A mod t with algebraic multiplicities, ascending.
/// Throws UnsupportedSpectrum when the residue characteristic polynomial does not split over Q.
std::vector<RootMultiplicity> residue_spectrum(const RMatrix& a);

struct JordanBlock {
  Rational eigenvalue;
  int multiplicity = 0;
  RMatrix projector;
};

/// Generalized-eigenspace decomposition of A over Q[t]/(t^m): one block per
/// residue eigenvalue, with projectors that are polynomials in A built from
/// the Hensel-lifted factorization of the characteristic polynomial.
std::vector<JordanBlock> jordan_decomposition_over_R(const RMatrix& a);

// ---- over series rings -----------------------------------------------------

SeriesMatrix constant_series(const RMatrix& a);
SeriesMatrix identity_series(int n, int t_order);
SeriesMatrix zero_series(int rows, int cols, int t_order);
/// The x^k coefficient matrix.
RMatrix x_layer(const SeriesMatrix& a, int k);
SeriesMatrix theta(const SeriesMatrix& a);
SeriesMatrix truncated(const SeriesMatrix& a, int n);
SeriesMatrix scalar_times(const LaurentSeries& s, const SeriesMatrix& a);
SeriesVector apply(const SeriesMatrix& a, const SeriesVector& v);
bool all_exact(const SeriesMatrix& a);
/// Smallest x-precision over windowed entries; nullopt if every entry is exact.
std::optional<int> precision(const SeriesMatrix& a);
/// Minimal valuation over nonzero entries; nullopt if every entry is zero on its window.
std::optional<int> min_valuation(const SeriesMatrix& a);
std::optional<int> min_lo(const SeriesMatrix& a);
bool vanishes_through(const SeriesMatrix& a, int n);

/// Inverse of a power-series matrix whose constant term is invertible over R.
SeriesMatrix invert_power_series_matrix(const SeriesMatrix& a, int target_hi);

/// Inverse over R((x)) by Gauss-Jordan elimination with unit pivots of
/// minimal residue valuation. The result window is recorded honestly and may
/// fall short of target_hi.
SeriesMatrix invert_series_matrix(const SeriesMatrix& a, int target_hi);

}  // namespace rsconn
