#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "rsconn/rational.hpp"

namespace rsconn {

/// Element of the truncated local ring Q[t]/(t^m).
///
/// Coefficients are stored for t^0 ... t^{m-1}. Elements of different
/// t-orders never mix; arithmetic between them raises a StructuralError.
/// The maximal ideal is (t): an element is a unit iff its t^0 coefficient is
/// nonzero.
class RingElem {
 public:
  RingElem() : RingElem(1) {}
  explicit RingElem(int t_order);
  RingElem(int t_order, const Rational& constant);
  RingElem(int t_order, std::vector<Rational> coeffs);

  static RingElem zero(int t_order) { return RingElem(t_order); }
  static RingElem one(int t_order) { return RingElem(t_order, Rational(1)); }
  /// The uniformizer t (zero when t_order == 1).
  static RingElem t(int t_order);

  int t_order() const { return static_cast<int>(coeffs_.size()); }
  const Rational& operator[](int k) const { return coeffs_[static_cast<std::size_t>(k)]; }
  Rational& operator[](int k) { return coeffs_[static_cast<std::size_t>(k)]; }
  std::span<const Rational> coeffs() const { return coeffs_; }

  const Rational& residue() const { return coeffs_.front(); }
  bool is_zero() const;
  bool is_unit() const { return !residue().is_zero(); }
  bool in_maximal_ideal() const { return residue().is_zero(); }

  /// Exact inverse; throws NotAUnit when the residue vanishes.
  RingElem inverse() const;
  /// Reinterpret in Q[t]/(t^m) for another m (truncating or zero-padding).
  RingElem with_t_order(int t_order) const;

  RingElem operator-() const;
  RingElem& operator+=(const RingElem& o);
  RingElem& operator-=(const RingElem& o);
  RingElem& operator*=(const Rational& s);
  friend RingElem operator+(RingElem a, const RingElem& b) { return a += b; }
  friend RingElem operator-(RingElem a, const RingElem& b) { return a -= b; }
  friend RingElem operator*(const RingElem& a, const RingElem& b);
  friend RingElem operator*(RingElem a, const Rational& s) { return a *= s; }
  friend RingElem operator*(const Rational& s, RingElem a) { return a *= s; }

  friend bool operator==(const RingElem& a, const RingElem& b) = default;

  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const RingElem& r) { return os << r.str(); }

 private:
  std::vector<Rational> coeffs_;
};

void require_same_order(const RingElem& a, const RingElem& b);

}  // namespace rsconn
