#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace rsconn;

namespace {

LaurentSeries ex(int m, std::vector<std::pair<int, RingElem>> terms) { return LaurentSeries::exact_poly(m, terms); }
LaurentSeries ex(std::vector<std::pair<int, long>> terms) {
  std::vector<std::pair<int, RingElem>> ts;
  for (auto [k, c] : terms) ts.emplace_back(k, RingElem(1, Rational(c)));
  return LaurentSeries::exact_poly(1, ts);
}
LaurentSeries win(int hi, std::vector<std::pair<int, long>> terms) {
  std::vector<std::pair<int, RingElem>> ts;
  for (auto [k, c] : terms) ts.emplace_back(k, RingElem(1, Rational(c)));
  return LaurentSeries::windowed(1, hi, ts);
}

LaurentSeries random_series(Rng& rng, int m, bool exact) {
  const int lo = rng.uniform(-3, 2);
  const int hi = lo + rng.uniform(0, 5);
  std::vector<std::pair<int, RingElem>> ts;
  for (int k = lo; k <= hi; ++k)
    if (rng.uniform(0, 3) > 0) ts.emplace_back(k, rng.ring_elem(m, 4, 3));
  return exact ? LaurentSeries::exact_poly(m, ts) : LaurentSeries::windowed(m, hi + rng.uniform(0, 3), ts);
}

// Equality of coefficients through n, with both sides known there.
bool agree_through(const LaurentSeries& f, const LaurentSeries& g, int lo, int n) {
  for (int k = lo; k <= n; ++k)
    if (f.coeff(k) != g.coeff(k)) return false;
  return true;
}

}  // namespace

TEST(Series, ExactProduct) {
  const LaurentSeries p = ex({{0, 1}, {1, 1}}) * ex({{0, 1}, {1, -1}});
  EXPECT_EQ(p, ex({{0, 1}, {2, -1}}));
  EXPECT_TRUE(p.exact());
}

TEST(Series, WindowShiftsUnderMonomialProduct) {
  const LaurentSeries p = win(3, {{-1, 1}, {0, 1}}) * ex({{1, 1}});
  EXPECT_FALSE(p.exact());
  EXPECT_EQ(p.hi(), 4);
  EXPECT_EQ(p, win(4, {{0, 1}, {1, 1}}));
}

TEST(Series, WindowOfProductIsMinOfShiftedWindows) {
  const LaurentSeries f = win(5, {{-2, 1}, {1, 3}});
  const LaurentSeries g = win(4, {{1, 2}});
  const LaurentSeries p = f * g;
  EXPECT_EQ(p.hi(), std::min(f.lo() + g.hi(), g.lo() + f.hi()));
}

TEST(Series, CoefficientAboveWindowIsUnknown) {
  const LaurentSeries f = win(2, {{0, 1}});
  try {
    (void)f.coeff(3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PrecisionExhausted);
  }
  EXPECT_TRUE(ex({{0, 1}}).coeff(7).is_zero());
}

TEST(Series, EmptyWindowIsPrecisionExhausted) {
  EXPECT_EQ(oracle::error_kind([] { LaurentSeries(1, 3, 2, false, {}); }), ErrorKind::PrecisionExhausted);
}

TEST(SeriesProperty, TruncationLaw) {
  Rng rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = rng.uniform(1, 3);
    const LaurentSeries f = random_series(rng, m, true), g = random_series(rng, m, true);
    const int cut_f = f.hi() + rng.uniform(-2, 2), cut_g = g.hi() + rng.uniform(-2, 2);
    if (cut_f < f.lo() || cut_g < g.lo()) continue;
    const LaurentSeries wf = f.truncated(cut_f), wg = g.truncated(cut_g);
    const LaurentSeries prod = wf * wg;
    const auto exact = oracle::lpoly_mul(oracle::lpoly(f), oracle::lpoly(g), m);
    for (int k = prod.lo(); k <= prod.hi(); ++k) {
      auto it = exact.find(k);
      const RingElem want = it == exact.end() ? RingElem::zero(m) : it->second;
      EXPECT_EQ(prod.coeff(k), want) << "k=" << k;
    }
    // Every honestly reported coefficient is correct; the window is not too short either.
    if (!wf.is_zero() && !wg.is_zero()) {
      EXPECT_GE(prod.hi(), std::min(wf.lo() + cut_g, wg.lo() + cut_f));
    }
    EXPECT_EQ(oracle::lpoly(f * g), exact);
  }
}

TEST(Series, InvertMonomialIsExact) {
  const LaurentSeries inv = series_invert(ex({{1, 1}}), 5);
  EXPECT_TRUE(inv.exact());
  EXPECT_EQ(inv, ex({{-1, 1}}));
}

TEST(Series, InvertGeometric) {
  const LaurentSeries inv = series_invert(ex({{0, 1}, {1, -1}}), 3);
  EXPECT_EQ(inv, win(3, {{0, 1}, {1, 1}, {2, 1}, {3, 1}}));
}

TEST(Series, InvertWithUnitInR) {
  const RingElem one_plus_t(2, std::vector<Rational>{1, 1});
  const LaurentSeries f = ex(2, {{0, one_plus_t}, {1, RingElem::one(2)}});
  const LaurentSeries inv = series_invert(f, 2);
  EXPECT_EQ(inv.lo(), 0);
  EXPECT_GE(inv.hi(), 2);
  const LaurentSeries prod = f * inv;
  EXPECT_TRUE(agree_through(prod, LaurentSeries::constant(RingElem::one(2)), 0, 2));
  // Hand check: 1/(1+t+x) = (1-t) - (1-2t) x + (1-3t) x^2 + ...
  EXPECT_EQ(inv.coeff(0), RingElem(2, std::vector<Rational>{1, -1}));
  EXPECT_EQ(inv.coeff(1), RingElem(2, std::vector<Rational>{-1, 2}));
  EXPECT_EQ(inv.coeff(2), RingElem(2, std::vector<Rational>{1, -3}));
}

TEST(Series, InvertNeedsUnitLeadingResidue) {
  const LaurentSeries f = ex(2, {{0, RingElem::t(2)}});
  EXPECT_EQ(oracle::error_kind([&] { series_invert(f, 3); }), ErrorKind::NotAUnit);
}

TEST(Series, InvertUsesValuationModT) {
  // t + x is x (1 + t/x), a unit of R[x, 1/x] with inverse x^-1 - t x^-2: the
  // nilpotent term below the unit coefficient pushes the inverse below x^-1.
  const LaurentSeries f = ex(2, {{0, RingElem::t(2)}, {1, RingElem::one(2)}});
  const LaurentSeries inv = series_invert(f, 3);
  EXPECT_TRUE(inv.exact());
  EXPECT_EQ(inv, ex(2, {{-2, -RingElem::t(2)}, {-1, RingElem::one(2)}}));
  EXPECT_EQ(f * inv, LaurentSeries::constant(RingElem::one(2)));

  const LaurentSeries w = f.truncated(4);
  const LaurentSeries winv = series_invert(w, 3);
  const LaurentSeries prod = w * winv;
  // The truncation error x^5 becomes x^3 after inversion and x^2 after the
  // nilpotent correction, so the honest window stops at x^1.
  EXPECT_FALSE(prod.exact());
  EXPECT_EQ(winv.hi(), 1);
  EXPECT_EQ(prod.hi(), 1);
  for (int k = prod.lo(); k <= prod.hi(); ++k)
    EXPECT_EQ(prod.coeff(k), k == 0 ? RingElem::one(2) : RingElem::zero(2)) << k;
}

TEST(SeriesProperty, DoubleInverseAgrees) {
  Rng rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = rng.uniform(1, 3);
    LaurentSeries f = random_series(rng, m, rng.coin());
    auto v = f.residue_valuation();
    if (!v) continue;
    const int target = 6;
    const LaurentSeries inv = series_invert(f, target);
    if (!inv.residue_valuation()) continue;  // truncation left no unit coefficient to invert back
    const LaurentSeries g = series_invert(inv, target);
    const int top = std::min({g.hi(), f.hi(), target});
    EXPECT_TRUE(agree_through(f, g, std::min(f.lo(), g.lo()), top));
    const LaurentSeries one = f * series_invert(f, target);
    if (one.exact()) EXPECT_EQ(one, LaurentSeries::constant(RingElem::one(m)));
    for (int k = one.lo(); k <= one.hi(); ++k) EXPECT_EQ(one.coeff(k), k == 0 ? RingElem::one(m) : RingElem::zero(m));
  }
}

TEST(Theta, Examples) {
  EXPECT_TRUE(theta(ex({{0, 1}})).is_zero());
  EXPECT_EQ(theta(ex({{3, 1}})), ex({{3, 3}}));
  const LaurentSeries w = theta(win(4, {{-2, 1}, {1, 5}}));
  EXPECT_EQ(w, win(4, {{-2, -2}, {1, 5}}));
}

TEST(ThetaProperty, LeibnizAndLinearity) {
  Rng rng(23);
  for (int trial = 0; trial < 150; ++trial) {
    const int m = rng.uniform(1, 3);
    const LaurentSeries f = random_series(rng, m, rng.coin()), g = random_series(rng, m, rng.coin());
    const LaurentSeries lhs = theta(f * g);
    const LaurentSeries rhs = theta(f) * g + f * theta(g);
    const int top = std::min(lhs.hi(), rhs.hi());
    for (int k = std::min(lhs.lo(), rhs.lo()); k <= top; ++k) EXPECT_EQ(lhs.coeff(k), rhs.coeff(k));
    const RingElem c = rng.ring_elem(m, 3, 2);
    const LaurentSeries lin = theta(c * f + g);
    const LaurentSeries lin2 = c * theta(f) + theta(g);
    for (int k = std::min(lin.lo(), lin2.lo()); k <= std::min(lin.hi(), lin2.hi()); ++k)
      EXPECT_EQ(lin.coeff(k), lin2.coeff(k));
  }
}

TEST(XShift, Examples) {
  EXPECT_EQ(x_shift(ex({{0, 1}}), 2), ex({{2, 1}}));
  EXPECT_EQ(x_shift(ex({{-1, 1}}), 1), ex({{0, 1}}));
  EXPECT_EQ(x_shift(win(3, {{0, 1}}), -2).hi(), 1);
}

TEST(XShiftProperty, ThetaCommutation) {
  Rng rng(24);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = rng.uniform(1, 3);
    const LaurentSeries f = random_series(rng, m, rng.coin());
    for (int k = -5; k <= 5; ++k) {
      const LaurentSeries lhs = theta(x_shift(f, k));
      const LaurentSeries rhs = x_shift(f, k) * RingElem(m, Rational(k)) + x_shift(theta(f), k);
      EXPECT_EQ(lhs, rhs);
    }
  }
}

TEST(SeriesProperty, ExactSeriesFormSubring) {
  Rng rng(25);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = rng.uniform(1, 3);
    const LaurentSeries f = random_series(rng, m, true), g = random_series(rng, m, true);
    EXPECT_TRUE((f + g).exact());
    EXPECT_TRUE((f - g).exact());
    EXPECT_TRUE((f * g).exact());
    EXPECT_TRUE(theta(f).exact());
    EXPECT_EQ(oracle::lpoly(f * g), oracle::lpoly_mul(oracle::lpoly(f), oracle::lpoly(g), m));
  }
}

TEST(Series, Str) {
  EXPECT_EQ(ex({}).str(), "0");
  EXPECT_FALSE(win(3, {{0, 1}}).str().empty());
}
