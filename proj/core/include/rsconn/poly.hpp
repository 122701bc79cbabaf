#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "rsconn/ring.hpp"

namespace rsconn {

/// Univariate polynomial in T with coefficients in Q[t]/(t^m).
/// Polynomials over Q are the t_order == 1 case.
class Poly {
 public:
  explicit Poly(int t_order) : t_order_(t_order) {}
  Poly(int t_order, std::vector<RingElem> coeffs);
  /// Convenience for polynomials over Q: coefficients of T^0, T^1, ...
  static Poly over_q(std::vector<Rational> coeffs);
  static Poly constant(const RingElem& c);
  /// T - root
  static Poly linear(const RingElem& root);
  static Poly monomial(int t_order, int degree);

  int t_order() const { return t_order_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_monic() const;
  const std::vector<RingElem>& coeffs() const { return coeffs_; }
  /// Coefficient of T^k (zero beyond the degree).
  RingElem coeff(int k) const;
  const RingElem& leading() const { return coeffs_.back(); }

  /// Reduction modulo the maximal ideal (t), as a polynomial over Q.
  Poly residue() const;
  /// Same coefficients viewed in Q[t]/(t^m) for another m.
  Poly with_t_order(int t_order) const;
  /// Coefficientwise t^k-component, as a polynomial over Q.
  Poly t_layer(int k) const;

  RingElem operator()(const RingElem& x) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const RingElem& s);

  /// Division with remainder by a polynomial whose leading coefficient is a unit.
  std::pair<Poly, Poly> divmod(const Poly& divisor) const;
  Poly operator%(const Poly& divisor) const { return divmod(divisor).second; }

  friend bool operator==(const Poly& a, const Poly& b) = default;

  std::string str() const;
  friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

 private:
  void trim();

  int t_order_;
  std::vector<RingElem> coeffs_;
};

/// Bezout cofactors (u, v) with u*g + v*h = 1 over Q, deg u < deg h, deg v < deg g.
/// Throws NotCoprime when gcd(g, h) != 1.
std::pair<Poly, Poly> bezout_coprime(const Poly& g, const Poly& h);

/// Lifts a monic coprime factorization of p mod t to a factorization over
/// Q[t]/(t^m), one t-layer per step.
std::vector<Poly> hensel_lift_factors(const Poly& p, const std::vector<Poly>& residue_factors);

/// Given monic pairwise strictly coprime factors G_i over R, returns cofactors
/// s_i with deg s_i < deg G_i and sum_i s_i * prod_{j != i} G_j = 1 exactly.
std::vector<Poly> lift_partial_fraction_cofactors(const std::vector<Poly>& factors);

struct RootMultiplicity {
  Rational root;
  int multiplicity = 0;
  friend bool operator==(const RootMultiplicity&, const RootMultiplicity&) = default;
};

/// Complete factorization of a monic polynomial over Q into rational linear
/// factors, roots ascending. Throws UnsupportedSpectrum when an irreducible
/// factor of degree > 1 remains.
std::vector<RootMultiplicity> factor_over_rationals(const Poly& p);

/// prod (T - root)^multiplicity over Q[t]/(t^m).
Poly expand_roots(const std::vector<RootMultiplicity>& roots, int t_order = 1);

}  // namespace rsconn
