#include "rsconn/algorithms.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <string>

namespace rsconn {

Gauge shear_gauge(const RMatrix& projector, int direction) {
  const int n = projector.rows();
  const int m = t_order_of(projector);
  const SeriesMatrix e = constant_series(projector);
  const SeriesMatrix rest = constant_series(identity_r(n, m) - projector);
  const RingElem one = RingElem::one(m);
  return Gauge{scalar_times(LaurentSeries::monomial(one, direction), e) + rest,
               scalar_times(LaurentSeries::monomial(one, -direction), e) + rest};
}

ShearResult unit_shear(const Connection& conn, const Rational& rho, int direction) {
  if (conn.flavor() != Flavor::Logarithmic) fail(ErrorKind::NotLogarithmic, "shearing needs a logarithmic connection");
  if (NormalizationWindow::contains(rho))
    fail(ErrorKind::PreconditionFailed, "exponent " + rho.str() + " already lies in [0,1)");
  const int toward = rho.sign() < 0 ? 1 : -1;
  if (direction != toward)
    fail(ErrorKind::PreconditionFailed, "direction " + std::to_string(direction) + " moves " + rho.str() +
                                            " away from [0,1)");
  const auto blocks = jordan_decomposition_over_R(residue(conn));
  auto it = std::find_if(blocks.begin(), blocks.end(), [&](const JordanBlock& b) { return b.eigenvalue == rho; });
  if (it == blocks.end()) fail(ErrorKind::PreconditionFailed, rho.str() + " is not an exponent");
  Gauge g = shear_gauge(it->projector, direction);
  Connection out = gauge_apply(conn, g);
  if (out.flavor() != Flavor::Logarithmic)
    fail(ErrorKind::ShearBrokeLogarithmicity, "shear at exponent " + rho.str() + " produced a pole");
  return ShearResult{std::move(out), std::move(g), {ShearStep{rho, direction}}};
}

ShearResult shear_normalize(const Connection& conn) {
  if (conn.flavor() != Flavor::Logarithmic) fail(ErrorKind::NotLogarithmic, "shearing needs a logarithmic connection");
  Exponents exps = exponents(conn);
  long budget = 0;
  for (const auto& e : exps) budget += std::labs(NormalizationWindow::shift_for(e.root)) * e.multiplicity;

  ShearResult result{conn, Gauge::identity(conn.rank(), conn.t_order()), {}};
  for (;;) {
    const RootMultiplicity* pick = nullptr;
    long best = std::numeric_limits<long>::max();
    for (const auto& e : exps) {
      if (NormalizationWindow::contains(e.root)) continue;
      const long shift = std::labs(NormalizationWindow::shift_for(e.root));
      if (shift < best) {  // exps is ascending, so ties keep the smaller eigenvalue
        best = shift;
        pick = &e;
      }
    }
    if (!pick) break;
    if (static_cast<long>(result.steps.size()) >= budget)
      fail(ErrorKind::ShearBrokeLogarithmicity, "shear normalization exceeded its step budget");
    const int direction = pick->root.sign() < 0 ? 1 : -1;
    ShearResult step = unit_shear(result.conn, pick->root, direction);
    result.conn = std::move(step.conn);
    result.gauge = compose(result.gauge, step.gauge);
    result.steps.push_back(step.steps.front());
    exps = exponents(result.conn);
  }
  return result;
}

namespace {

bool is_constant_exact(const SeriesMatrix& a) {
  return std::all_of(a.data().begin(), a.data().end(), [](const LaurentSeries& s) {
    if (!s.exact()) return false;
    auto v = s.valuation();
    return !v || (*v == 0 && s.hi() == 0);
  });
}

SeriesMatrix from_x_layers(const std::vector<RMatrix>& layers, int lo) {
  const RMatrix& first = layers.front();
  const int m = t_order_of(first);
  const int hi = lo + static_cast<int>(layers.size()) - 1;
  SeriesMatrix out = zero_series(first.rows(), first.cols(), m);
  for (int r = 0; r < first.rows(); ++r)
    for (int c = 0; c < first.cols(); ++c) {
      std::vector<RingElem> cs;
      cs.reserve(layers.size());
      for (const auto& l : layers) cs.push_back(l(r, c));
      out(r, c) = LaurentSeries(m, lo, hi, false, std::move(cs));
    }
  return out;
}

}  // namespace

EulerFormResult euler_form(const Connection& conn, int n) {
  const RMatrix a0 = residue(conn);
  const int rank = conn.rank();
  const int m = conn.t_order();
  residue_spectrum(a0);  // UnsupportedSpectrum surfaces before any solve
  if (is_constant_exact(conn.matrix()))
    return EulerFormResult{EndObject{a0}, Gauge::identity(rank, m), n};

  int top = n;
  if (auto p = conn.x_precision()) top = std::min(top, *p);
  if (top < 0) fail(ErrorKind::PrecisionExhausted, "connection is not known through x^0");
  std::vector<RMatrix> a_layers, p_layers;
  for (int i = 0; i <= top; ++i) a_layers.push_back(x_layer(conn.matrix(), i));
  p_layers.push_back(identity_r(rank, m));
  for (int j = 1; j <= top; ++j) {
    RMatrix rhs = zero_r(rank, rank, m);
    for (int i = 1; i <= j; ++i) rhs -= a_layers[static_cast<std::size_t>(i)] * p_layers[static_cast<std::size_t>(j - i)];
    p_layers.push_back(sylvester_solve(a0, Rational(j), rhs));
  }
  SeriesMatrix p = from_x_layers(p_layers, 0);
  SeriesMatrix p_inv = invert_power_series_matrix(p, top);
  return EulerFormResult{EndObject{a0}, Gauge{std::move(p), std::move(p_inv)}, top};
}

SeriesMatrix euler_residual(const Connection& conn, const EulerFormResult& result) {
  return morphism_residual(result.gauge.s, constant_series(result.euler.a), conn.matrix());
}

namespace {

struct HorizontalSystem {
  QMatrix equations;
  int lo;
  int hi;
};

// Coefficientwise system for theta(h) + A h = 0 with h = sum_{k=lo..hi} h_k x^k.
// Unknown (k, i, s) is the t^s coefficient of component i at x^k.
HorizontalSystem build_horizontal_system(const SeriesMatrix& a, int lo, int hi) {
  const int n = a.rows();
  const int m = a(0, 0).t_order();
  const int a_min = std::min(0, min_valuation(a).value_or(0));
  int eq_hi = std::min(hi, hi + a_min);
  if (auto p = precision(a)) eq_hi = std::min(eq_hi, lo + *p);
  const int eq_lo = lo + a_min;
  const int unknowns = (hi - lo + 1) * n * m;
  const int eq_count = std::max(0, eq_hi - eq_lo + 1) * n * m;
  auto var = [&](int k, int i, int s) { return ((k - lo) * n + i) * m + s; };
  QMatrix sys(std::max(1, eq_count), unknowns, Rational(0));
  for (int j = eq_lo; j <= eq_hi; ++j)
    for (int i = 0; i < n; ++i)
      for (int s = 0; s < m; ++s) {
        const int row = ((j - eq_lo) * n + i) * m + s;
        if (j >= lo && j <= hi) sys(row, var(j, i, s)) += Rational(j);
        for (int k = lo; k <= std::min(hi, j - a_min); ++k) {
          const int shift = j - k;
          for (int l = 0; l < n; ++l) {
            const LaurentSeries& entry = a(i, l);
            if (entry.is_zero() && entry.exact()) continue;
            if (shift < entry.lo()) continue;
            const RingElem c = entry.coeff(shift);
            for (int u = 0; u <= s; ++u)
              if (!c[u].is_zero()) sys(row, var(k, l, s - u)) += c[u];
          }
        }
      }
  return HorizontalSystem{std::move(sys), lo, hi};
}

std::vector<QVector> horizontal_nullspace(const SeriesMatrix& a, int lo, int hi) {
  return nullspace_rational(build_horizontal_system(a, lo, hi).equations);
}

}  // namespace

std::vector<SeriesVector> horizontal_sections(const Connection& conn, int lo, int n) {
  if (n < lo) fail(ErrorKind::PrecisionExhausted, "empty window for horizontal sections");
  const SeriesMatrix& a = conn.matrix();
  const int rank = conn.rank();
  const int m = conn.t_order();
  const auto basis = horizontal_nullspace(a, lo, n);
  const auto wider = horizontal_nullspace(a, lo < 0 ? lo - 2 : lo, n + 2);
  if (basis.size() != wider.size())
    fail(ErrorKind::PrecisionExhausted, "horizontal section count is not stable between windows (" +
                                            std::to_string(basis.size()) + " vs " + std::to_string(wider.size()) + ")");
  std::vector<SeriesVector> out;
  for (const auto& v : basis) {
    SeriesVector h;
    for (int i = 0; i < rank; ++i) {
      std::vector<RingElem> cs;
      for (int k = lo; k <= n; ++k) {
        RingElem c(m);
        for (int s = 0; s < m; ++s) c[s] = v[static_cast<std::size_t>(((k - lo) * rank + i) * m + s)];
        cs.push_back(std::move(c));
      }
      h.push_back(LaurentSeries(m, lo, n, false, std::move(cs)));
    }
    out.push_back(std::move(h));
  }
  return out;
}

bool HomBasis::has_nonconstant() const {
  for (const auto& h : basis)
    for (const auto& s : h.data())
      for (const auto& [k, c] : s.terms())
        if (k != 0) return true;
  return false;
}

namespace {

// Q-basis of constant matrices h with k*h - (h A - B h) = 0.
std::vector<RMatrix> hom_layer(const RMatrix& a, const RMatrix& b, int k) {
  const int ns = a.rows(), nd = b.rows();
  const int m = t_order_of(a);
  auto var = [&](int r, int c, int s) { return (r * ns + c) * m + s; };
  QMatrix sys(nd * ns * m, nd * ns * m, Rational(0));
  // Row (r, c, s): t^s part of k h_rc - sum_l h_rl A_lc + sum_l B_rl h_lc.
  for (int r = 0; r < nd; ++r)
    for (int c = 0; c < ns; ++c)
      for (int s = 0; s < m; ++s) {
        const int row = var(r, c, s);
        sys(row, var(r, c, s)) += Rational(k);
        for (int u = 0; u <= s; ++u) {
          for (int l = 0; l < ns; ++l)
            if (!a(l, c)[u].is_zero()) sys(row, var(r, l, s - u)) -= a(l, c)[u];
          for (int l = 0; l < nd; ++l)
            if (!b(r, l)[u].is_zero()) sys(row, var(l, c, s - u)) += b(r, l)[u];
        }
      }
  std::vector<RMatrix> out;
  for (const auto& v : nullspace_rational(sys)) {
    RMatrix h = zero_r(nd, ns, m);
    for (int r = 0; r < nd; ++r)
      for (int c = 0; c < ns; ++c)
        for (int s = 0; s < m; ++s) h(r, c)[s] = v[static_cast<std::size_t>(var(r, c, s))];
    out.push_back(std::move(h));
  }
  return out;
}

}  // namespace

HomBasis hom_space(const EndObject& src, const EndObject& dst, int lo, int n) {
  if (n < lo) fail(ErrorKind::PrecisionExhausted, "empty window for hom space");
  if (src.t_order() != dst.t_order()) fail(ErrorKind::Structural, "hom between different base rings");
  const Exponents sa = residue_spectrum(src.a);
  const Exponents sb = residue_spectrum(dst.a);
  // Constant coefficient equations decouple: x^k contributes k h_k = h_k A - B h_k.
  HomBasis out{{}, lo, n};
  const int m = src.t_order();
  std::size_t count = 0;
  for (int k = lo; k <= n; ++k) {
    for (RMatrix& h : hom_layer(src.a, dst.a, k)) {
      SeriesMatrix hs = zero_series(h.rows(), h.cols(), m);
      for (int r = 0; r < h.rows(); ++r)
        for (int c = 0; c < h.cols(); ++c) hs(r, c) = LaurentSeries::windowed(m, n, {{k, h(r, c)}});
      out.basis.push_back(std::move(hs));
      ++count;
    }
  }
  std::size_t wider = count;
  for (int k : {lo - 2, lo - 1, n + 1, n + 2}) {
    if (lo >= 0 && k < lo) continue;
    wider += hom_layer(src.a, dst.a, k).size();
  }
  if (wider != count)
    fail(ErrorKind::PrecisionExhausted, "hom space dimension is not stable between windows (" +
                                            std::to_string(count) + " vs " + std::to_string(wider) + ")");
  bool integer_gap = false;
  for (const auto& r : sa)
    for (const auto& s : sb) {
      const Rational d = r.root - s.root;
      if (d.is_integer() && !d.is_zero()) integer_gap = true;
    }
  if (!integer_gap && out.has_nonconstant())
    fail(ErrorKind::Structural, "nonconstant morphism although no exponent difference is a nonzero integer");
  return out;
}

bool verify_certificate(const Connection& input, const RMatrix& a0, const Gauge& gauge, int n) {
  const SeriesMatrix res = morphism_residual(gauge.s, constant_series(a0), input.matrix());
  return vanishes_through(res, n) && gauge.verify_inverse(n);
}

AlgebraizeResult algebraize(const Connection& conn, int n) {
  ShearResult sh = shear_normalize(conn);
  // The composite gauge and its inverse each carry the shear poles, and the
  // inverse check multiplies them, so P needs two pole orders of headroom.
  const int pole = std::max({0, -min_lo(sh.gauge.s).value_or(0), -min_lo(sh.gauge.s_inv).value_or(0)});
  EulerFormResult ef = euler_form(sh.conn, n + 2 * pole);
  Gauge total = compose(sh.gauge, ef.gauge);
  const int m = conn.t_order();
  const SeriesMatrix res = morphism_residual(total.s, constant_series(ef.euler.a), conn.matrix());
  const SeriesMatrix left = total.s * total.s_inv - identity_series(conn.rank(), m);
  const SeriesMatrix right = total.s_inv * total.s - identity_series(conn.rank(), m);
  int certified = n;
  for (const SeriesMatrix* d : {&res, &left, &right})
    if (auto p = precision(*d)) certified = std::min(certified, *p);
  if (certified < 0) fail(ErrorKind::PrecisionExhausted, "no x-precision left to certify the gauge");
  if (!vanishes_through(res, certified) || !vanishes_through(left, certified) || !vanishes_through(right, certified))
    fail(ErrorKind::PrecisionExhausted, "gauge certificate does not hold on its window");
  return AlgebraizeResult{eul_algebraic(ef.euler), std::move(total), certified, std::move(sh.steps)};
}

namespace {

// Basis of the Q[[x]]-span of the columns of g (rank n), by column operations
// with minimal-valuation pivots.
SeriesMatrix column_basis(SeriesMatrix g, int work_hi) {
  const int n = g.rows();
  std::vector<bool> row_used(static_cast<std::size_t>(n), false), col_used(static_cast<std::size_t>(g.cols()), false);
  std::vector<int> pivot_cols;
  for (int step = 0; step < n; ++step) {
    int pr = -1, pc = -1, best = std::numeric_limits<int>::max();
    for (int r = 0; r < n; ++r) {
      if (row_used[static_cast<std::size_t>(r)]) continue;
      for (int c = 0; c < g.cols(); ++c) {
        if (col_used[static_cast<std::size_t>(c)]) continue;
        if (auto v = g(r, c).valuation(); v && *v < best) {
          best = *v;
          pr = r;
          pc = c;
        }
      }
    }
    if (pr < 0) fail(ErrorKind::PrecisionExhausted, "lattice generators lost rank on the working window");
    const LaurentSeries inv = series_invert(g(pr, pc), work_hi);
    for (int c = 0; c < g.cols(); ++c) {
      if (c == pc || col_used[static_cast<std::size_t>(c)] || g(pr, c).is_zero()) continue;
      const LaurentSeries q = g(pr, c) * inv;
      for (int r = 0; r < n; ++r) g(r, c) -= q * g(r, pc);
    }
    row_used[static_cast<std::size_t>(pr)] = true;
    col_used[static_cast<std::size_t>(pc)] = true;
    pivot_cols.push_back(pc);
  }
  std::sort(pivot_cols.begin(), pivot_cols.end());
  SeriesMatrix basis = zero_series(n, n, 1);
  for (int j = 0; j < n; ++j)
    for (int r = 0; r < n; ++r) basis(r, j) = g(r, pivot_cols[static_cast<std::size_t>(j)]);
  return basis;
}

}  // namespace

SaturationResult saturate_log_model(const Connection& conn, int bound, int n) {
  if (conn.t_order() != 1) fail(ErrorKind::Unsupported, "lattice saturation is only available over Q (t_order 1)");
  const int rank = conn.rank();
  const SeriesMatrix& a = conn.matrix();
  const int work_hi = n + 4 * rank;
  Gauge g = Gauge::identity(rank, 1);
  for (int round = 1; round <= bound; ++round) {
    const SeriesMatrix transformed = g.s_inv * a * g.s + g.s_inv * theta(g.s);
    if (has_no_poles(transformed)) {
      const std::optional<int> p = precision(transformed);
      if (p && *p < 0) fail(ErrorKind::PrecisionExhausted, "saturated model lost its residue to truncation");
      return SaturationResult{Connection(Flavor::Logarithmic, transformed), std::move(g), round};
    }
    const SeriesMatrix image = a * g.s + theta(g.s);
    SeriesMatrix gens = zero_series(rank, 2 * rank, 1);
    for (int r = 0; r < rank; ++r)
      for (int c = 0; c < rank; ++c) {
        gens(r, c) = g.s(r, c);
        gens(r, rank + c) = image(r, c);
      }
    SeriesMatrix basis = column_basis(std::move(gens), work_hi);
    SeriesMatrix basis_inv = invert_series_matrix(basis, work_hi);
    g = Gauge{std::move(basis), std::move(basis_inv)};
  }
  fail(ErrorKind::NotRecognized, "no logarithmic lattice found within " + std::to_string(bound) + " rounds");
}

}  // namespace rsconn
