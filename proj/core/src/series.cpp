#include "rsconn/series.hpp"

#include <algorithm>
#include <limits>

#include "rsconn/errors.hpp"

namespace rsconn {

LaurentSeries::LaurentSeries(int t_order) : t_order_(t_order), coeffs_{RingElem::zero(t_order)} {}

LaurentSeries::LaurentSeries(int t_order, int lo, int hi, bool exact, std::vector<RingElem> coeffs)
    : t_order_(t_order), lo_(lo), hi_(hi), exact_(exact), coeffs_(std::move(coeffs)) {
  if (hi_ < lo_) fail(ErrorKind::PrecisionExhausted, "empty series window");
  if (static_cast<long>(coeffs_.size()) != static_cast<long>(hi_) - lo_ + 1)
    fail(ErrorKind::Structural, "series coefficient count does not match window");
  for (const auto& c : coeffs_)
    if (c.t_order() != t_order_) fail(ErrorKind::Structural, "series coefficient with wrong t-order");
  normalize();
}

LaurentSeries LaurentSeries::constant(const RingElem& c) { return monomial(c, 0); }

LaurentSeries LaurentSeries::monomial(const RingElem& c, int exponent) {
  return LaurentSeries(c.t_order(), exponent, exponent, true, {c});
}

namespace {

LaurentSeries from_terms(int t_order, int lo, int hi, bool exact,
                         const std::vector<std::pair<int, RingElem>>& terms) {
  std::vector<RingElem> cs(static_cast<std::size_t>(hi - lo + 1), RingElem::zero(t_order));
  for (const auto& [k, c] : terms) {
    if (c.t_order() != t_order) fail(ErrorKind::Structural, "series term with wrong t-order");
    cs[static_cast<std::size_t>(k - lo)] += c;
  }
  return LaurentSeries(t_order, lo, hi, exact, std::move(cs));
}

}  // namespace

LaurentSeries LaurentSeries::exact_poly(int t_order, const std::vector<std::pair<int, RingElem>>& terms) {
  if (terms.empty()) return LaurentSeries(t_order);
  int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
  for (const auto& [k, c] : terms) {
    lo = std::min(lo, k);
    hi = std::max(hi, k);
  }
  return from_terms(t_order, lo, hi, true, terms);
}

LaurentSeries LaurentSeries::windowed(int t_order, int hi, const std::vector<std::pair<int, RingElem>>& terms) {
  int lo = hi;
  for (const auto& [k, c] : terms) {
    if (k > hi) fail(ErrorKind::Structural, "series term x^" + std::to_string(k) + " beyond window hi=" +
                                                std::to_string(hi));
    lo = std::min(lo, k);
  }
  return from_terms(t_order, lo, hi, false, terms);
}

void LaurentSeries::normalize() {
  std::size_t first = 0;
  while (first < coeffs_.size() && coeffs_[first].is_zero()) ++first;
  if (exact_) {
    if (first == coeffs_.size()) {
      lo_ = hi_ = 0;
      coeffs_.assign(1, RingElem::zero(t_order_));
      return;
    }
    std::size_t last = coeffs_.size();
    while (coeffs_[last - 1].is_zero()) --last;
    coeffs_.erase(coeffs_.begin() + static_cast<long>(last), coeffs_.end());
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(first));
    lo_ += static_cast<int>(first);
    hi_ = lo_ + static_cast<int>(coeffs_.size()) - 1;
    return;
  }
  first = std::min(first, coeffs_.size() - 1);
  if (first > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(first));
    lo_ += static_cast<int>(first);
  }
}

RingElem LaurentSeries::coeff(int k) const {
  if (k < lo_) return RingElem::zero(t_order_);
  if (k > hi_) {
    if (exact_) return RingElem::zero(t_order_);
    fail(ErrorKind::PrecisionExhausted,
         "coefficient x^" + std::to_string(k) + " requested beyond precision x^" + std::to_string(hi_));
  }
  return coeffs_[static_cast<std::size_t>(k - lo_)];
}

std::vector<std::pair<int, RingElem>> LaurentSeries::terms() const {
  std::vector<std::pair<int, RingElem>> out;
  for (int k = lo_; k <= hi_; ++k) {
    const auto& c = coeffs_[static_cast<std::size_t>(k - lo_)];
    if (!c.is_zero()) out.emplace_back(k, c);
  }
  return out;
}

std::optional<int> LaurentSeries::valuation() const {
  for (int k = lo_; k <= hi_; ++k)
    if (!coeffs_[static_cast<std::size_t>(k - lo_)].is_zero()) return k;
  return std::nullopt;
}

std::optional<int> LaurentSeries::residue_valuation() const {
  for (int k = lo_; k <= hi_; ++k)
    if (coeffs_[static_cast<std::size_t>(k - lo_)].is_unit()) return k;
  return std::nullopt;
}

bool LaurentSeries::is_zero() const { return !valuation().has_value(); }

bool LaurentSeries::vanishes_through(int n) const {
  if (!exact_ && hi_ < n) return false;
  for (int k = lo_; k <= std::min(n, hi_); ++k)
    if (!coeffs_[static_cast<std::size_t>(k - lo_)].is_zero()) return false;
  return true;
}

LaurentSeries LaurentSeries::truncated(int n) const {
  const int new_hi = exact_ ? n : std::min(n, hi_);
  if (new_hi < lo_) return LaurentSeries(t_order_, new_hi, new_hi, false, {RingElem::zero(t_order_)});
  std::vector<RingElem> cs;
  cs.reserve(static_cast<std::size_t>(new_hi - lo_ + 1));
  for (int k = lo_; k <= new_hi; ++k) cs.push_back(coeff(k));
  return LaurentSeries(t_order_, lo_, new_hi, false, std::move(cs));
}

LaurentSeries LaurentSeries::with_t_order(int t_order) const {
  std::vector<RingElem> cs;
  cs.reserve(coeffs_.size());
  for (const auto& c : coeffs_) cs.push_back(c.with_t_order(t_order));
  return LaurentSeries(t_order, lo_, hi_, exact_, std::move(cs));
}

LaurentSeries LaurentSeries::t_layer(int k) const {
  std::vector<RingElem> cs;
  cs.reserve(coeffs_.size());
  for (const auto& c : coeffs_) cs.emplace_back(1, c[k]);
  return LaurentSeries(1, lo_, hi_, exact_, std::move(cs));
}

LaurentSeries LaurentSeries::operator-() const {
  LaurentSeries r(*this);
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

LaurentSeries& LaurentSeries::operator+=(const LaurentSeries& o) { return *this = series_add(*this, o); }
LaurentSeries& LaurentSeries::operator-=(const LaurentSeries& o) { return *this = series_sub(*this, o); }

namespace {

bool is_exact_zero(const LaurentSeries& f) { return f.exact() && f.is_zero(); }

void require_same_order(const LaurentSeries& f, const LaurentSeries& g) {
  if (f.t_order() != g.t_order())
    fail(ErrorKind::Structural, "series t-order mismatch: " + std::to_string(f.t_order()) + " vs " +
                                    std::to_string(g.t_order()));
}

LaurentSeries combine(const LaurentSeries& f, const LaurentSeries& g, bool subtract) {
  require_same_order(f, g);
  if (is_exact_zero(g)) return f;
  if (is_exact_zero(f)) return subtract ? -g : g;
  const bool exact = f.exact() && g.exact();
  const int lo = std::min(f.lo(), g.lo());
  int hi;
  if (exact) hi = std::max(f.hi(), g.hi());
  else if (!f.exact() && !g.exact()) hi = std::min(f.hi(), g.hi());
  else hi = f.exact() ? g.hi() : f.hi();
  std::vector<RingElem> cs;
  cs.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (int k = lo; k <= hi; ++k) cs.push_back(subtract ? f.coeff(k) - g.coeff(k) : f.coeff(k) + g.coeff(k));
  return LaurentSeries(f.t_order(), lo, hi, exact, std::move(cs));
}

}  // namespace

LaurentSeries series_add(const LaurentSeries& f, const LaurentSeries& g) { return combine(f, g, false); }
LaurentSeries series_sub(const LaurentSeries& f, const LaurentSeries& g) { return combine(f, g, true); }

LaurentSeries series_mul(const LaurentSeries& f, const LaurentSeries& g) {
  require_same_order(f, g);
  const int m = f.t_order();
  if (is_exact_zero(f) || is_exact_zero(g)) return LaurentSeries(m);
  const bool exact = f.exact() && g.exact();
  const int lo = f.lo() + g.lo();
  int hi;
  if (exact) {
    hi = f.hi() + g.hi();
  } else {
    hi = std::numeric_limits<int>::max();
    if (!f.exact()) hi = std::min(hi, f.hi() + g.lo());
    if (!g.exact()) hi = std::min(hi, g.hi() + f.lo());
  }
  if (hi < lo) fail(ErrorKind::PrecisionExhausted, "product window is empty");
  std::vector<RingElem> cs(static_cast<std::size_t>(hi - lo + 1), RingElem::zero(m));
  for (int i = f.lo(); i <= f.hi(); ++i) {
    const RingElem a = f.coeff(i);
    if (a.is_zero()) continue;
    for (int j = g.lo(); j <= g.hi() && i + j <= hi; ++j) {
      const RingElem b = g.coeff(j);
      if (b.is_zero()) continue;
      cs[static_cast<std::size_t>(i + j - lo)] += a * b;
    }
  }
  return LaurentSeries(m, lo, hi, exact, std::move(cs));
}

LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) { return series_mul(a, b); }

LaurentSeries operator*(LaurentSeries a, const RingElem& s) {
  if (s.t_order() != a.t_order_) fail(ErrorKind::Structural, "scalar t-order mismatch");
  for (auto& c : a.coeffs_) c = c * s;
  a.normalize();
  return a;
}

LaurentSeries theta(const LaurentSeries& f) {
  std::vector<RingElem> cs;
  cs.reserve(static_cast<std::size_t>(f.hi() - f.lo() + 1));
  for (int k = f.lo(); k <= f.hi(); ++k) cs.push_back(f.coeff(k) * Rational(k));
  return LaurentSeries(f.t_order(), f.lo(), f.hi(), f.exact(), std::move(cs));
}

LaurentSeries x_shift(const LaurentSeries& f, int k) {
  if (is_exact_zero(f)) return f;
  std::vector<RingElem> cs;
  cs.reserve(static_cast<std::size_t>(f.hi() - f.lo() + 1));
  for (int e = f.lo(); e <= f.hi(); ++e) cs.push_back(f.coeff(e));
  return LaurentSeries(f.t_order(), f.lo() + k, f.hi() + k, f.exact(), std::move(cs));
}

namespace {

// Inverse of a nonzero series over Q through `target_hi`.
LaurentSeries invert_over_q(const LaurentSeries& f, int target_hi) {
  const auto v = f.valuation();
  if (!v) fail(ErrorKind::NotAUnit, "series vanishes on its window");
  const Rational lead = f.coeff(*v)[0];
  if (f.exact() && f.terms().size() == 1)
    return LaurentSeries::monomial(RingElem(1, Rational(1) / lead), -*v);
  // f = x^v u with u(0) = lead; invert u through x^(target_hi + v).
  int top = target_hi + *v;
  if (!f.exact()) top = std::min(top, f.hi() - *v);
  if (top < 0) fail(ErrorKind::PrecisionExhausted, "not enough precision to invert series");
  const Rational lead_inv = Rational(1) / lead;
  std::vector<Rational> u(static_cast<std::size_t>(top + 1));
  for (int j = 0; j <= top; ++j) u[static_cast<std::size_t>(j)] = f.coeff(j + *v)[0];
  std::vector<RingElem> b(static_cast<std::size_t>(top + 1), RingElem::zero(1));
  b[0] = RingElem(1, lead_inv);
  for (int j = 1; j <= top; ++j) {
    Rational acc(0);
    for (int i = 1; i <= j; ++i) {
      const Rational& ui = u[static_cast<std::size_t>(i)];
      if (!ui.is_zero()) acc += ui * b[static_cast<std::size_t>(j - i)][0];
    }
    b[static_cast<std::size_t>(j)] = RingElem(1, -(acc * lead_inv));
  }
  return LaurentSeries(1, -*v, top - *v, false, std::move(b));
}

}  // namespace

LaurentSeries series_invert(const LaurentSeries& f, int target_hi) {
  const int m = f.t_order();
  const LaurentSeries f0 = f.t_layer(0);
  const auto v = f0.valuation();
  if (!v) fail(ErrorKind::NotAUnit, "series " + f.str() + " has no unit coefficient on its window");

  std::vector<LaurentSeries> layers;
  layers.reserve(static_cast<std::size_t>(m));
  int lowest = *v;
  for (int k = 0; k < m; ++k) {
    layers.push_back(f.t_layer(k));
    if (k > 0 && !layers.back().is_zero()) lowest = std::min(lowest, layers.back().lo());
  }
  // Nilpotent terms below the valuation cost precision in every layer product.
  const int slack = (m - 1) * std::max(0, *v - lowest);
  std::vector<LaurentSeries> g;
  g.reserve(static_cast<std::size_t>(m));
  g.push_back(invert_over_q(f0, target_hi + slack));
  for (int k = 1; k < m; ++k) {
    LaurentSeries acc(1);
    for (int i = 1; i <= k; ++i) acc += layers[static_cast<std::size_t>(i)] * g[static_cast<std::size_t>(k - i)];
    g.push_back(-(g[0] * acc));
  }

  bool exact = true;
  int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::max();
  int exact_hi = std::numeric_limits<int>::min();
  for (const auto& gk : g) {
    if (gk.exact() && gk.is_zero()) continue;
    lo = std::min(lo, gk.lo());
    if (gk.exact()) exact_hi = std::max(exact_hi, gk.hi());
    else {
      exact = false;
      hi = std::min(hi, gk.hi());
    }
  }
  if (exact) hi = exact_hi;
  else hi = std::min(hi, target_hi);
  if (lo > hi) lo = hi;
  std::vector<RingElem> cs;
  cs.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (int e = lo; e <= hi; ++e) {
    RingElem c(m);
    for (int k = 0; k < m; ++k) c[k] = g[static_cast<std::size_t>(k)].coeff(e)[0];
    cs.push_back(std::move(c));
  }
  return LaurentSeries(m, lo, hi, exact, std::move(cs));
}

std::string LaurentSeries::str() const {
  std::string out;
  for (const auto& [k, c] : terms()) {
    std::string cs = c.str();
    bool compound = cs.find_first_of("+-", 1) != std::string::npos;
    std::string term;
    if (k == 0) term = cs;
    else {
      std::string mono = k == 1 ? "x" : "x^" + std::to_string(k);
      if (k < 0) mono = "x^(" + std::to_string(k) + ")";
      if (cs == "1") term = mono;
      else if (cs == "-1") term = "-" + mono;
      else term = (compound ? "(" + cs + ")" : cs) + "*" + mono;
    }
    if (!out.empty() && term[0] != '-') out += "+";
    out += term;
  }
  if (out.empty()) out = "0";
  if (!exact_) out += " + O(x^" + std::to_string(hi_ + 1) + ")";
  return out;
}

}  // namespace rsconn
