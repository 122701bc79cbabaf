#include "rsconn/linalg.hpp"

#include <algorithm>
#include <limits>

namespace rsconn {

RMatrix identity_r(int n, int t_order) {
  return RMatrix::identity(n, RingElem::zero(t_order), RingElem::one(t_order));
}

RMatrix zero_r(int rows, int cols, int t_order) { return RMatrix(rows, cols, RingElem::zero(t_order)); }

int t_order_of(const RMatrix& a) {
  const int m = a(0, 0).t_order();
  for (const auto& e : a.data())
    if (e.t_order() != m) fail(ErrorKind::Structural, "matrix entries with mixed t-order");
  return m;
}

QMatrix t_layer(const RMatrix& a, int k) {
  return a.map([k](const RingElem& e) { return e[k]; });
}

RMatrix embed(const QMatrix& a, int t_order) {
  return a.map([t_order](const Rational& q) { return RingElem(t_order, q); });
}

RMatrix scale(const RMatrix& a, const RingElem& s) {
  return a.map([&s](const RingElem& e) { return e * s; });
}

QMatrix identity_q(int n) { return QMatrix::identity(n, Rational(0), Rational(1)); }

std::vector<int> row_reduce(QMatrix& a) {
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
    int piv = -1;
    for (int r = row; r < a.rows(); ++r)
      if (!a(r, col).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    if (piv != row)
      for (int c = 0; c < a.cols(); ++c) std::swap(a(piv, c), a(row, c));
    const Rational inv = Rational(1) / a(row, col);
    for (int c = col; c < a.cols(); ++c)
      if (!a(row, c).is_zero()) a(row, c) *= inv;
    for (int r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, col).is_zero()) continue;
      const Rational f = a(r, col);
      for (int c = col; c < a.cols(); ++c)
        if (!a(row, c).is_zero()) a(r, c) -= f * a(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int rank_q(QMatrix a) { return static_cast<int>(row_reduce(a).size()); }

std::optional<QMatrix> inverse_q(const QMatrix& a) {
  if (!a.is_square()) fail(ErrorKind::Structural, "inverse of a non-square matrix");
  const int n = a.rows();
  QMatrix aug(n, 2 * n, Rational(0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = Rational(1);
  }
  auto pivots = row_reduce(aug);
  if (static_cast<int>(pivots.size()) < n || pivots[static_cast<std::size_t>(n - 1)] != n - 1) return std::nullopt;
  QMatrix inv(n, n, Rational(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

std::vector<QVector> nullspace_rational(const QMatrix& m) {
  QMatrix a = m;
  const auto pivots = row_reduce(a);
  std::vector<bool> is_pivot(static_cast<std::size_t>(a.cols()), false);
  for (int p : pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<QVector> basis;
  for (int f = 0; f < a.cols(); ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    QVector v(static_cast<std::size_t>(a.cols()), Rational(0));
    v[static_cast<std::size_t>(f)] = Rational(1);
    for (std::size_t r = 0; r < pivots.size(); ++r)
      v[static_cast<std::size_t>(pivots[r])] = -a(static_cast<int>(r), f);
    basis.push_back(std::move(v));
  }
  return basis;
}

Poly char_poly(const RMatrix& a) {
  if (!a.is_square()) fail(ErrorKind::Structural, "characteristic polynomial of a non-square matrix");
  const int n = a.rows();
  const int m = t_order_of(a);
  // Faddeev-LeVerrier: valid over any Q-algebra.
  std::vector<RingElem> c(static_cast<std::size_t>(n + 1), RingElem::zero(m));
  c[static_cast<std::size_t>(n)] = RingElem::one(m);
  RMatrix mk = zero_r(n, n, m);
  const RMatrix id = identity_r(n, m);
  for (int k = 1; k <= n; ++k) {
    mk = a * mk + scale(id, c[static_cast<std::size_t>(n - k + 1)]);
    RMatrix amk = a * mk;
    RingElem tr = RingElem::zero(m);
    for (int i = 0; i < n; ++i) tr += amk(i, i);
    c[static_cast<std::size_t>(n - k)] = tr * Rational(-1, k);
  }
  return Poly(m, std::move(c));
}

RMatrix evaluate(const Poly& p, const RMatrix& a) {
  const int n = a.rows();
  const int m = t_order_of(a);
  RMatrix acc = zero_r(n, n, m);
  const RMatrix id = identity_r(n, m);
  for (int k = p.degree(); k >= 0; --k) acc = a * acc + scale(id, p.coeff(k));
  return acc;
}

RMatrix solve_linear_over_ring(const RMatrix& m, const RMatrix& b) {
  if (!m.is_square() || m.rows() != b.rows()) fail(ErrorKind::Structural, "solve: shape mismatch");
  const int to = t_order_of(m);
  if (t_order_of(b) != to) fail(ErrorKind::Structural, "solve: t-order mismatch");
  const auto res_inv = inverse_q(residue_matrix(m));
  if (!res_inv) fail(ErrorKind::SingularResidue, "matrix is singular modulo t");
  std::vector<QMatrix> m_layers, x_layers;
  for (int i = 0; i < to; ++i) m_layers.push_back(t_layer(m, i));
  for (int j = 0; j < to; ++j) {
    QMatrix rhs = t_layer(b, j);
    for (int i = 1; i <= j; ++i) rhs -= m_layers[static_cast<std::size_t>(i)] * x_layers[static_cast<std::size_t>(j - i)];
    x_layers.push_back(*res_inv * rhs);
  }
  RMatrix x = zero_r(b.rows(), b.cols(), to);
  for (int r = 0; r < b.rows(); ++r)
    for (int c = 0; c < b.cols(); ++c)
      for (int j = 0; j < to; ++j) x(r, c)[j] = x_layers[static_cast<std::size_t>(j)](r, c);
  return x;
}

RVector solve_linear_over_ring(const RMatrix& m, const RVector& b) {
  if (b.empty()) fail(ErrorKind::Structural, "solve: empty right-hand side");
  RMatrix col(static_cast<int>(b.size()), 1, b.front());
  for (std::size_t i = 0; i < b.size(); ++i) col(static_cast<int>(i), 0) = b[i];
  RMatrix x = solve_linear_over_ring(m, col);
  RVector out;
  for (int i = 0; i < x.rows(); ++i) out.push_back(x(i, 0));
  return out;
}

RMatrix inverse_r(const RMatrix& a) { return solve_linear_over_ring(a, identity_r(a.rows(), t_order_of(a))); }

RMatrix sylvester_solve(const RMatrix& a0, const Rational& lambda, const RMatrix& c) {
  if (!a0.is_square() || c.rows() != a0.rows() || c.cols() != a0.rows())
    fail(ErrorKind::Structural, "sylvester_solve: shape mismatch");
  const int n = a0.rows();
  const int m = t_order_of(a0);
  const int nn = n * n;
  // Unknown X(i,j) sits at index i*n + j.
  RMatrix op = zero_r(nn, nn, m);
  RMatrix rhs = zero_r(nn, 1, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const int row = i * n + j;
      op(row, row) += RingElem(m, lambda);
      for (int k = 0; k < n; ++k) {
        op(row, k * n + j) += a0(i, k);
        op(row, i * n + k) -= a0(k, j);
      }
      rhs(row, 0) = c(i, j);
    }
  RMatrix sol(1, 1, RingElem::zero(m));
  try {
    sol = solve_linear_over_ring(op, rhs);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SingularResidue) throw;
    fail(ErrorKind::ResonantExponents,
         "operator X -> " + lambda.str() + "*X + [A0, X] is singular: residue eigenvalue difference equals " +
             (-lambda).str());
  }
  RMatrix x = zero_r(n, n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) x(i, j) = sol(i * n + j, 0);
  return x;
}

std::vector<RootMultiplicity> residue_spectrum(const RMatrix& a) {
  return factor_over_rationals(char_poly(a).residue());
}

std::vector<JordanBlock> jordan_decomposition_over_R(const RMatrix& a) {
  const int n = a.rows();
  const int m = t_order_of(a);
  const Poly p = char_poly(a);
  const auto roots = factor_over_rationals(p.residue());
  if (roots.size() == 1) return {JordanBlock{roots[0].root, roots[0].multiplicity, identity_r(n, m)}};

  std::vector<Poly> residue_factors;
  for (const auto& r : roots) residue_factors.push_back(expand_roots({r}));
  const auto lifted = hensel_lift_factors(p, residue_factors);
  const auto cofactors = lift_partial_fraction_cofactors(lifted);

  std::vector<JordanBlock> blocks;
  for (std::size_t i = 0; i < lifted.size(); ++i) {
    Poly e = cofactors[i];
    for (std::size_t j = 0; j < lifted.size(); ++j)
      if (j != i) e = e * lifted[j];
    blocks.push_back(JordanBlock{roots[i].root, roots[i].multiplicity, evaluate(e, a)});
  }
  return blocks;
}

SeriesMatrix constant_series(const RMatrix& a) {
  return a.map([](const RingElem& e) { return LaurentSeries::constant(e); });
}

SeriesMatrix identity_series(int n, int t_order) { return constant_series(identity_r(n, t_order)); }

SeriesMatrix zero_series(int rows, int cols, int t_order) {
  return SeriesMatrix(rows, cols, LaurentSeries(t_order));
}

RMatrix x_layer(const SeriesMatrix& a, int k) {
  return a.map([k](const LaurentSeries& s) { return s.coeff(k); });
}

SeriesMatrix theta(const SeriesMatrix& a) {
  return a.map([](const LaurentSeries& s) { return theta(s); });
}

SeriesMatrix truncated(const SeriesMatrix& a, int n) {
  return a.map([n](const LaurentSeries& s) { return s.truncated(n); });
}

SeriesMatrix scalar_times(const LaurentSeries& s, const SeriesMatrix& a) {
  return a.map([&s](const LaurentSeries& e) { return s * e; });
}

SeriesVector apply(const SeriesMatrix& a, const SeriesVector& v) {
  if (static_cast<int>(v.size()) != a.cols()) fail(ErrorKind::Structural, "matrix-vector shape mismatch");
  SeriesVector out;
  for (int i = 0; i < a.rows(); ++i) {
    LaurentSeries acc = a(i, 0) * v[0];
    for (int j = 1; j < a.cols(); ++j) acc += a(i, j) * v[static_cast<std::size_t>(j)];
    out.push_back(std::move(acc));
  }
  return out;
}

bool all_exact(const SeriesMatrix& a) {
  return std::all_of(a.data().begin(), a.data().end(), [](const LaurentSeries& s) { return s.exact(); });
}

std::optional<int> precision(const SeriesMatrix& a) {
  std::optional<int> p;
  for (const auto& s : a.data())
    if (!s.exact()) p = p ? std::min(*p, s.hi()) : s.hi();
  return p;
}

std::optional<int> min_valuation(const SeriesMatrix& a) {
  std::optional<int> v;
  for (const auto& s : a.data())
    if (auto sv = s.valuation()) v = v ? std::min(*v, *sv) : *sv;
  return v;
}

std::optional<int> min_lo(const SeriesMatrix& a) {
  std::optional<int> v;
  for (const auto& s : a.data())
    if (!s.is_zero()) v = v ? std::min(*v, s.lo()) : s.lo();
  return v;
}

bool vanishes_through(const SeriesMatrix& a, int n) {
  return std::all_of(a.data().begin(), a.data().end(), [n](const LaurentSeries& s) { return s.vanishes_through(n); });
}

SeriesMatrix invert_power_series_matrix(const SeriesMatrix& a, int target_hi) {
  if (!a.is_square()) fail(ErrorKind::Structural, "inverse of a non-square matrix");
  const int n = a.rows();
  const int m = a(0, 0).t_order();
  if (auto v = min_valuation(a); v && *v < 0)
    fail(ErrorKind::PreconditionFailed, "power-series inverse needs a matrix without poles");
  int top = target_hi;
  if (auto p = precision(a)) top = std::min(top, *p);
  if (top < 0) fail(ErrorKind::PrecisionExhausted, "no precision left to invert matrix");
  std::vector<RMatrix> layers, inv;
  for (int k = 0; k <= top; ++k) layers.push_back(x_layer(a, k));
  inv.push_back(inverse_r(layers[0]));
  for (int j = 1; j <= top; ++j) {
    RMatrix acc = zero_r(n, n, m);
    for (int i = 1; i <= j; ++i) acc += layers[static_cast<std::size_t>(i)] * inv[static_cast<std::size_t>(j - i)];
    inv.push_back(-(inv[0] * acc));
  }
  SeriesMatrix out = zero_series(n, n, m);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      std::vector<RingElem> cs;
      for (int j = 0; j <= top; ++j) cs.push_back(inv[static_cast<std::size_t>(j)](r, c));
      out(r, c) = LaurentSeries(m, 0, top, false, std::move(cs));
    }
  return out;
}

SeriesMatrix invert_series_matrix(const SeriesMatrix& a, int target_hi) {
  if (!a.is_square()) fail(ErrorKind::Structural, "inverse of a non-square matrix");
  const int n = a.rows();
  const int m = a(0, 0).t_order();
  const int span = std::max(0, -min_lo(a).value_or(0)) + std::max(0, min_valuation(a).value_or(0));
  const int work_hi = target_hi + 2 * n * (span + 1);
  SeriesMatrix left = a;
  SeriesMatrix right = identity_series(n, m);
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    int best = std::numeric_limits<int>::max();
    for (int r = col; r < n; ++r)
      if (auto v = left(r, col).residue_valuation(); v && *v < best) {
        best = *v;
        piv = r;
      }
    if (piv < 0) fail(ErrorKind::NotAUnit, "series matrix is singular on its window");
    if (piv != col)
      for (int c = 0; c < n; ++c) {
        std::swap(left(piv, c), left(col, c));
        std::swap(right(piv, c), right(col, c));
      }
    const LaurentSeries inv = series_invert(left(col, col), work_hi);
    for (int c = 0; c < n; ++c) {
      left(col, c) = left(col, c) * inv;
      right(col, c) = right(col, c) * inv;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || (left(r, col).is_zero() && left(r, col).exact())) continue;
      const LaurentSeries f = left(r, col);
      for (int c = 0; c < n; ++c) {
        left(r, c) -= f * left(col, c);
        right(r, c) -= f * right(col, c);
      }
    }
  }
  return right.map([target_hi](const LaurentSeries& s) { return s.exact() ? s : s.truncated(target_hi); });
}

}  // namespace rsconn
