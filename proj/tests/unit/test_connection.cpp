#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace rsconn;

namespace {

LaurentSeries c1(const Rational& v) { return LaurentSeries::constant(RingElem(1, v)); }
LaurentSeries mono(const Rational& v, int k, int m = 1) { return LaurentSeries::monomial(RingElem(m, v), k); }

SeriesMatrix smat(std::vector<std::vector<LaurentSeries>> rows) {
  SeriesMatrix a = zero_series(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()), rows[0][0].t_order());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) a(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  return a;
}

Gauge random_constant_gauge(Rng& rng, int n, int m) {
  auto [q, q_inv] = random_unimodular(rng, n);
  RMatrix s = embed(q, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 1; k < m; ++k) s(i, j)[k] = rng.rational(2, 2);
  return Gauge::constant(s);
}

Gauge random_polynomial_gauge(Rng& rng, int n, int m) {
  // Unipotent upper-triangular polynomial gauge; its inverse is exact.
  SeriesMatrix s = identity_series(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.coin()) s(i, j) = LaurentSeries::monomial(rng.ring_elem(m, 2, 2), rng.uniform(-1, 2));
  const SeriesMatrix inv = invert_series_matrix(s, 10);
  return Gauge{s, inv};
}

Exponents shifted(Exponents e, int k) {
  for (auto& r : e) r.root += Rational(k);
  return e;
}

const SeriesMatrix kTriangular = smat({{c1(Rational(1, 2)), mono(1, 1)}, {c1(0), c1(Rational(1, 3))}});

}  // namespace

TEST(Connection, ValidationNamesTheInvariant) {
  SeriesMatrix mixed = identity_series(2, 2);
  mixed(0, 1) = LaurentSeries::constant(RingElem::one(3));
  try {
    Connection(Flavor::Logarithmic, mixed);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ValidationError);
    EXPECT_NE(std::string(e.what()).find("t_order"), std::string::npos);
  }
  EXPECT_EQ(oracle::error_kind([] { Connection(Flavor::Logarithmic, smat({{mono(1, -1)}})); }),
            ErrorKind::ValidationError);
  EXPECT_EQ(oracle::error_kind([] { Connection(Flavor::Algebraic, truncated(identity_series(1, 1), 3)); }),
            ErrorKind::ValidationError);
  EXPECT_NO_THROW(Connection(Flavor::Formal, smat({{mono(1, -1)}})));
}

TEST(Euler, ConstantMatrices) {
  const EndObject triv{identity_r(1, 1) - identity_r(1, 1)};
  const Connection c = eul_formal(triv);
  EXPECT_EQ(c.flavor(), Flavor::Logarithmic);
  EXPECT_TRUE(all_exact(c.matrix()));
  EXPECT_TRUE(c.matrix()(0, 0).is_zero());

  RMatrix nil = zero_r(2, 2, 1);
  nil(0, 1) = RingElem::one(1);
  const Connection e = eul_formal(EndObject{nil});
  EXPECT_EQ(residue(e), nil);
  EXPECT_EQ(eul_algebraic(EndObject{nil}).flavor(), Flavor::Algebraic);
  EXPECT_EQ(eul_algebraic(EndObject{nil}).matrix(), e.matrix());
}

TEST(EulerProperty, ExponentsAreResidueSpectrum) {
  Rng rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = rng.uniform(1, 3), n = rng.uniform(1, 4);
    const EndObject obj{random_split_matrix(rng, n, m, shear_pool())};
    const Exponents want = factor_over_rationals(char_poly(obj.a).residue());
    EXPECT_EQ(exponents(eul_formal(obj)), want);
    EXPECT_EQ(total_multiplicity(want), n);
  }
}

TEST(Residue, Examples) {
  const Connection c(Flavor::Logarithmic, kTriangular);
  RMatrix want = zero_r(2, 2, 1);
  want(0, 0) = RingElem(1, Rational(1, 2));
  want(1, 1) = RingElem(1, Rational(1, 3));
  EXPECT_EQ(residue(c), want);
  EXPECT_EQ(exponents(c), (Exponents{{Rational(1, 3), 1}, {Rational(1, 2), 1}}));
  EXPECT_EQ(exponents(Connection(Flavor::Logarithmic, smat({{c1(Rational(3, 2))}}))),
            (Exponents{{Rational(3, 2), 1}}));
  EXPECT_EQ(oracle::error_kind([] { residue(Connection(Flavor::Formal, smat({{mono(1, -1)}}))); }),
            ErrorKind::NotLogarithmic);
}

TEST(Residue, SwapOnePlusTExponents) {
  RMatrix a = zero_r(2, 2, 2);
  a(0, 1) = RingElem(2, std::vector<Rational>{1, 1});
  a(1, 0) = RingElem::one(2);
  EXPECT_EQ(exponents(eul_formal(EndObject{a})), (Exponents{{Rational(-1), 1}, {Rational(1), 1}}));
}

TEST(ResidueProperty, ConstantGaugeConjugates) {
  Rng rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = rng.uniform(1, 3), n = rng.uniform(1, 3);
    const Connection c = random_log_connection(rng, n, m, shear_pool(), 2);
    const Gauge g = random_constant_gauge(rng, n, m);
    const RMatrix s0 = x_layer(g.s, 0), s0_inv = x_layer(g.s_inv, 0);
    const Connection out = gauge_apply(c, g);
    EXPECT_EQ(residue(out), s0_inv * residue(c) * s0);
    EXPECT_EQ(exponents(out), exponents(c));
  }
}

TEST(GaugeApply, IdentityAndScalarShift) {
  const Connection c(Flavor::Logarithmic, kTriangular);
  EXPECT_EQ(gauge_apply(c, Gauge::identity(2, 1)), c);

  const Connection one(Flavor::Logarithmic, smat({{c1(Rational(3, 2))}}));
  const Connection out = gauge_apply(one, Gauge::scalar_shift(1, 1, -1));
  EXPECT_EQ(out.matrix(), smat({{c1(Rational(1, 2))}}));
  EXPECT_EQ(out.flavor(), Flavor::Logarithmic);
}

TEST(GaugeApplyProperty, ScalarShearsShiftExponents) {
  Rng rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = rng.uniform(1, 3), n = rng.uniform(1, 3);
    const Connection c = random_log_connection(rng, n, m, shear_pool(), 2);
    for (int k = -3; k <= 3; ++k)
      EXPECT_EQ(exponents(gauge_apply(c, Gauge::scalar_shift(n, m, k))), shifted(exponents(c), k));
  }
}

TEST(GaugeApplyProperty, Composition) {
  Rng rng(44);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = rng.uniform(1, 3), n = rng.uniform(1, 3);
    const Connection c = random_log_connection(rng, n, m, shear_pool(), 2);
    const Gauge g1 = random_polynomial_gauge(rng, n, m), g2 = random_constant_gauge(rng, n, m);
    const Connection step = gauge_apply(gauge_apply(c, g1), g2);
    const Connection once = gauge_apply(c, compose(g1, g2));
    ASSERT_TRUE(all_exact(step.matrix()));
    EXPECT_EQ(step.matrix(), once.matrix());
  }
}

TEST(GaugeApply, LeavingTheLogarithmicCategoryIsRecorded) {
  const Connection c(Flavor::Logarithmic, kTriangular);
  SeriesMatrix s = identity_series(2, 1), s_inv = identity_series(2, 1);
  s(1, 1) = mono(1, 2);
  s_inv(1, 1) = mono(1, -2);
  // The x entry moves to x^3 above the diagonal; shear the other way to create a pole.
  EXPECT_EQ(gauge_apply(c, Gauge{s, s_inv}).flavor(), Flavor::Logarithmic);
  EXPECT_EQ(gauge_apply(c, Gauge{s_inv, s}).flavor(), Flavor::Formal);
}

TEST(Restrict, EulerAndExponents) {
  Rng rng(45);
  const EndObject obj{random_split_matrix(rng, 3, 2, window_pool())};
  const Connection r = restrict(eul_algebraic(obj), 12);
  EXPECT_EQ(r, Connection(Flavor::Logarithmic, truncated(eul_formal(obj).matrix(), 12)));
  EXPECT_EQ(r.x_precision(), 12);
  EXPECT_EQ(exponents(r), exponents(eul_formal(obj)));
  EXPECT_EQ(oracle::error_kind([&] { restrict(eul_formal(obj), 12); }), ErrorKind::PreconditionFailed);
}

TEST(RestrictProperty, CommutesWithPolynomialGauges) {
  Rng rng(46);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = rng.uniform(1, 3), n = rng.uniform(1, 3);
    const EndObject obj{random_split_matrix(rng, n, m, shear_pool())};
    const Connection alg = eul_algebraic(obj);
    const Gauge g = random_polynomial_gauge(rng, n, m);
    const int big = 12;
    const Connection a = restrict(gauge_apply(alg, g), big);
    const Connection b = gauge_apply(restrict(alg, big), g);
    const int top = std::min(*a.x_precision(), *b.x_precision());
    EXPECT_GE(top, big - 2);
    EXPECT_TRUE(vanishes_through(a.matrix() - b.matrix(), top));
  }
}

TEST(Leibniz, TrivialAndRandom) {
  Rng rng(47);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = rng.uniform(1, 3), n = rng.uniform(1, 3);
    const Connection c = eul_formal(EndObject{random_split_matrix(rng, n, m, shear_pool())});
    SeriesVector v;
    for (int i = 0; i < n; ++i) v.push_back(LaurentSeries::exact_poly(m, {{rng.uniform(-2, 2), rng.ring_elem(m, 3, 2)}}));
    EXPECT_TRUE(leibniz_check(c, LaurentSeries::constant(RingElem::one(m)), v));
    const LaurentSeries f =
        LaurentSeries::exact_poly(m, {{rng.uniform(-3, 0), rng.ring_elem(m, 3, 2)}, {rng.uniform(1, 3), rng.ring_elem(m, 3, 2)}});
    EXPECT_TRUE(leibniz_check(c, f, v));
  }
}

TEST(Leibniz, CorruptedActionIsCaught) {
  const Connection c(Flavor::Logarithmic, kTriangular);
  // Squaring every component is not a derivation.
  const NablaAction bad = [&c](const SeriesVector& w) {
    SeriesVector out = nabla(c, w);
    for (std::size_t i = 0; i < w.size(); ++i) out[i] += w[i] * w[i];
    return out;
  };
  const SeriesVector v{mono(1, 0), mono(2, 1)};
  EXPECT_TRUE(leibniz_check(c, mono(3, 2), v));
  EXPECT_FALSE(leibniz_check(bad, mono(3, 2), v));
}

TEST(EulerProperty, IntertwinersAreMorphisms) {
  Rng rng(48);
  for (int trial = 0; trial < 40; ++trial) {
    const int m = rng.uniform(1, 3), n = rng.uniform(1, 3);
    const RMatrix a = random_split_matrix(rng, n, m, shear_pool());
    // B = phi A phi^-1 makes phi an intertwiner: phi A = B phi.
    const Gauge g = random_constant_gauge(rng, n, m);
    const RMatrix phi = x_layer(g.s, 0), phi_inv = x_layer(g.s_inv, 0);
    const RMatrix b = phi * a * phi_inv;
    ASSERT_EQ(phi * a, b * phi);
    const SeriesMatrix res =
        morphism_residual(constant_series(phi), eul_formal(EndObject{a}).matrix(), eul_formal(EndObject{b}).matrix());
    EXPECT_FALSE(min_valuation(res).has_value());
  }
}

TEST(Exponents, ModZ) {
  const Exponents e{{Rational(-5, 2), 1}, {Rational(1, 2), 2}, {Rational(7, 3), 1}};
  EXPECT_EQ(exponents_mod_z(e), (Exponents{{Rational(1, 3), 1}, {Rational(1, 2), 3}}));
}
