#include "rsconn/ring.hpp"

#include "rsconn/errors.hpp"

namespace rsconn {

void require_same_order(const RingElem& a, const RingElem& b) {
  if (a.t_order() != b.t_order())
    fail(ErrorKind::Structural, "t-order mismatch: " + std::to_string(a.t_order()) + " vs " +
                                    std::to_string(b.t_order()));
}

RingElem::RingElem(int t_order) {
  if (t_order < 1) fail(ErrorKind::Structural, "t-order must be positive");
  coeffs_.assign(static_cast<std::size_t>(t_order), Rational(0));
}

RingElem::RingElem(int t_order, const Rational& constant) : RingElem(t_order) {
  coeffs_[0] = constant;
}

RingElem::RingElem(int t_order, std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  if (t_order < 1) fail(ErrorKind::Structural, "t-order must be positive");
  if (static_cast<int>(coeffs_.size()) != t_order)
    fail(ErrorKind::Structural, "ring element needs exactly " + std::to_string(t_order) +
                                    " coefficients, got " + std::to_string(coeffs_.size()));
}

RingElem RingElem::t(int t_order) {
  RingElem r(t_order);
  if (t_order > 1) r.coeffs_[1] = Rational(1);
  return r;
}

bool RingElem::is_zero() const {
  for (const auto& c : coeffs_)
    if (!c.is_zero()) return false;
  return true;
}

RingElem RingElem::inverse() const {
  if (!is_unit()) fail(ErrorKind::NotAUnit, "element " + str() + " is not a unit");
  const int m = t_order();
  RingElem b(m);
  const Rational a0_inv = Rational(1) / coeffs_[0];
  b.coeffs_[0] = a0_inv;
  // b_k = -a0^{-1} * sum_{i=1..k} a_i b_{k-i}
  for (int k = 1; k < m; ++k) {
    Rational acc(0);
    for (int i = 1; i <= k; ++i) acc += (*this)[i] * b[k - i];
    b[k] = -(acc * a0_inv);
  }
  return b;
}

RingElem RingElem::with_t_order(int t_order) const {
  RingElem r(t_order);
  for (int k = 0; k < std::min(t_order, this->t_order()); ++k) r[k] = (*this)[k];
  return r;
}

RingElem RingElem::operator-() const {
  RingElem r(*this);
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

RingElem& RingElem::operator+=(const RingElem& o) {
  require_same_order(*this, o);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  return *this;
}

RingElem& RingElem::operator-=(const RingElem& o) {
  require_same_order(*this, o);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  return *this;
}

RingElem& RingElem::operator*=(const Rational& s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

RingElem operator*(const RingElem& a, const RingElem& b) {
  require_same_order(a, b);
  const int m = a.t_order();
  RingElem r(m);
  for (int i = 0; i < m; ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; i + j < m; ++j) {
      if (b[j].is_zero()) continue;
      r[i + j] += a[i] * b[j];
    }
  }
  return r;
}

std::string RingElem::str() const {
  std::string out;
  for (int k = 0; k < t_order(); ++k) {
    const Rational& c = (*this)[k];
    if (c.is_zero()) continue;
    std::string term = c.str();
    if (k > 0) term = (c == Rational(1) ? "" : (c == Rational(-1) ? "-" : term + "*")) +
                      (k == 1 ? "t" : "t^" + std::to_string(k));
    if (!out.empty() && term[0] != '-') out += "+";
    out += term;
  }
  return out.empty() ? "0" : out;
}

}  // namespace rsconn
