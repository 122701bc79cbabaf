#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "rsconn/ring.hpp"

namespace rsconn {

/// Truncated Laurent series in x over Q[t]/(t^m).
///
/// Two precision regimes share this type:
///  - exact: a Laurent polynomial in R[x, 1/x]; all omitted coefficients are zero.
///  - windowed: coefficients are known for exponents <= hi(); everything
///    below lo() is zero, everything above hi() is unknown.
/// Arithmetic always records the honest output window.
class LaurentSeries {
 public:
  /// Exact zero.
  explicit LaurentSeries(int t_order = 1);

  static LaurentSeries constant(const RingElem& c);
  static LaurentSeries monomial(const RingElem& c, int exponent);
  /// Exact Laurent polynomial from (exponent, coefficient) terms.
  static LaurentSeries exact_poly(int t_order, const std::vector<std::pair<int, RingElem>>& terms);
  /// Windowed series with known coefficients through `hi`.
  static LaurentSeries windowed(int t_order, int hi, const std::vector<std::pair<int, RingElem>>& terms);
  /// Dense constructor. Coefficients start at `lo`.
  LaurentSeries(int t_order, int lo, int hi, bool exact, std::vector<RingElem> coeffs);

  int t_order() const { return t_order_; }
  int lo() const { return lo_; }
  int hi() const { return hi_; }
  bool exact() const { return exact_; }
  /// x-precision of a windowed series; nullopt for exact ones.
  std::optional<int> precision() const { return exact_ ? std::nullopt : std::optional<int>(hi_); }

  /// Coefficient of x^k. Throws PrecisionExhausted above the window.
  RingElem coeff(int k) const;
  /// Nonzero terms in ascending exponent order.
  std::vector<std::pair<int, RingElem>> terms() const;

  /// Lowest exponent with a nonzero coefficient; nullopt if zero on the window.
  std::optional<int> valuation() const;
  /// Lowest exponent whose coefficient is a unit of R (valuation mod t).
  std::optional<int> residue_valuation() const;
  bool is_zero() const;
  /// True iff every coefficient through x^n is zero and known.
  bool vanishes_through(int n) const;

  /// Windowed copy with hi lowered to min(hi, n); exact input is dropped to the window.
  LaurentSeries truncated(int n) const;
  /// Reduction mod t^k for k <= t_order, or zero padding for larger k.
  LaurentSeries with_t_order(int t_order) const;
  /// The t^k coefficient series, a series over Q.
  LaurentSeries t_layer(int k) const;

  LaurentSeries operator-() const;
  LaurentSeries& operator+=(const LaurentSeries& o);
  LaurentSeries& operator-=(const LaurentSeries& o);
  friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
  friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b);
  friend LaurentSeries operator*(LaurentSeries a, const RingElem& s);
  friend LaurentSeries operator*(const RingElem& s, LaurentSeries a) { return std::move(a) * s; }

  friend bool operator==(const LaurentSeries&, const LaurentSeries&) = default;

  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const LaurentSeries& s) { return os << s.str(); }

 private:
  void normalize();

  int t_order_;
  int lo_ = 0;
  int hi_ = 0;
  bool exact_ = true;
  std::vector<RingElem> coeffs_;
};

LaurentSeries series_add(const LaurentSeries& f, const LaurentSeries& g);
LaurentSeries series_sub(const LaurentSeries& f, const LaurentSeries& g);
LaurentSeries series_mul(const LaurentSeries& f, const LaurentSeries& g);

/// Inverse in R((x)) computed through `target_hi`. Throws NotAUnit when f mod t
/// vanishes on the window. Exact inputs that are units of R[x, 1/x] give exact results.
LaurentSeries series_invert(const LaurentSeries& f, int target_hi);

/// The logarithmic derivation x d/dx.
LaurentSeries theta(const LaurentSeries& f);

/// x^k * f.
LaurentSeries x_shift(const LaurentSeries& f, int k);

}  // namespace rsconn
