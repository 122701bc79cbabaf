#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rsconn/generators.hpp"

using namespace rsconn;
using oracle::re;

namespace {

RingElem t_poly(int m, std::vector<Rational> cs) {
  cs.resize(static_cast<std::size_t>(m), Rational(0));
  return RingElem(m, std::move(cs));
}

Poly q_poly(std::vector<Rational> cs) { return Poly::over_q(std::move(cs)); }

}  // namespace

TEST(Rational, CanonicalForm) {
  Rational r(6, -4);
  EXPECT_EQ(r.str(), "-3/2");
  EXPECT_EQ(r.denominator(), 2);
  EXPECT_EQ(Rational(4, 2).str(), "2");
  EXPECT_EQ(Rational::parse("-10/4").str(), "-5/2");
  EXPECT_EQ(Rational::parse("-7").str(), "-7");
}

TEST(Rational, ParseRejectsGarbage) {
  for (const char* bad : {"", "1/0", "10/-4", "a", "1/", "/2", "1.5", "1/2/3", " 1"}) {
    EXPECT_THROW(Rational::parse(bad), Error) << bad;
  }
}

TEST(Rational, FloorRoundsDown) {
  EXPECT_EQ(Rational(-5, 2).floor(), -3);
  EXPECT_EQ(Rational(7, 3).floor(), 2);
  EXPECT_EQ(Rational(-2).floor(), -2);
}

TEST(RingElem, ProductTruncatesAtOrder) {
  EXPECT_EQ(t_poly(2, {1, 1}) * t_poly(2, {1, -1}), RingElem::one(2));
  EXPECT_EQ(t_poly(3, {1, 1}) * t_poly(3, {1, -1}), t_poly(3, {1, 0, -1}));
  EXPECT_EQ(RingElem::t(2) * RingElem::t(2), RingElem::zero(2));
}

TEST(RingElem, MismatchedOrdersAreStructuralErrors) {
  try {
    (void)(RingElem::one(2) + RingElem::one(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Structural);
    EXPECT_EQ(e.name(), "StructuralError");
  }
  EXPECT_THROW((void)(RingElem::one(2) * RingElem::one(3)), Error);
}

TEST(RingElem, Inverse) {
  EXPECT_EQ(t_poly(2, {1, 1}).inverse(), t_poly(2, {1, -1}));
  EXPECT_EQ(RingElem(3, Rational(2)).inverse(), RingElem(3, Rational(1, 2)));
  const RingElem inv = t_poly(3, {1, 1}).inverse();
  EXPECT_EQ(inv, t_poly(3, {1, -1, 1}));
  EXPECT_EQ(oracle::ring_mul(oracle::coeffs(inv), {1, 1, 0}), (std::vector<Rational>{1, 0, 0}));
}

TEST(RingElem, NonUnitInverseFails) {
  try {
    (void)RingElem::t(3).inverse();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAUnit);
  }
}

TEST(RingElemProperty, ProductMatchesConvolution) {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = rng.uniform(1, 4);
    const RingElem a = rng.ring_elem(m, 5, 4), b = rng.ring_elem(m, 5, 4);
    EXPECT_EQ(oracle::coeffs(a * b), oracle::ring_mul(oracle::coeffs(a), oracle::coeffs(b)));
  }
}

TEST(RingElemProperty, InverseTimesUnitIsOne) {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = rng.uniform(1, 4);
    RingElem a = rng.ring_elem(m, 5, 4);
    if (a[0].is_zero()) a[0] = Rational(1);
    EXPECT_EQ(a.inverse() * a, RingElem::one(m));
  }
}

TEST(Bezout, LinearPairs) {
  {
    auto [u, v] = bezout_coprime(q_poly({0, 1}), q_poly({-1, 1}));
    EXPECT_EQ(u, q_poly({1}));
    EXPECT_EQ(v, q_poly({-1}));
  }
  {
    const Poly g = q_poly({-1, 1}), h = q_poly({1, 1});
    auto [u, v] = bezout_coprime(g, h);
    EXPECT_EQ(u, q_poly({Rational(-1, 2)}));
    EXPECT_EQ(v, q_poly({Rational(1, 2)}));
    EXPECT_EQ(u * g + v * h, q_poly({1}));
  }
}

TEST(Bezout, QuadraticAgainstLinear) {
  const Poly g = q_poly({0, 0, 1}), h = q_poly({-1, 1});
  auto [u, v] = bezout_coprime(g, h);
  EXPECT_EQ(u * g + v * h, q_poly({1}));
  EXPECT_LT(u.degree(), h.degree());
  EXPECT_LT(v.degree(), g.degree());
  // Hand-derived: 1 * T^2 + (-T - 1)(T - 1) = 1.
  EXPECT_EQ(u, q_poly({1}));
  EXPECT_EQ(v, q_poly({-1, -1}));
}

TEST(Bezout, CommonFactorIsNotCoprime) {
  try {
    bezout_coprime(q_poly({-1, 0, 1}), q_poly({-1, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotCoprime);
  }
}

TEST(BezoutProperty, IdentityAndDegreeBounds) {
  Rng rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<RootMultiplicity> gr, hr;
    for (int k = rng.uniform(1, 3); k > 0; --k) gr.push_back({Rational(rng.uniform(-4, 4), 2), 1});
    for (int k = rng.uniform(1, 3); k > 0; --k) hr.push_back({Rational(rng.uniform(-4, 4), 3) + Rational(1, 7), 1});
    const Poly g = expand_roots(gr), h = expand_roots(hr);
    auto [u, v] = bezout_coprime(g, h);
    EXPECT_EQ(u * g + v * h, q_poly({1}));
    EXPECT_LT(u.degree(), h.degree());
    EXPECT_LT(v.degree(), g.degree());
  }
}

TEST(Hensel, SquareRootOfOnePlusT) {
  const RingElem s = t_poly(2, {1, Rational(1, 2)});
  const Poly p(2, {-t_poly(2, {1, 1}), RingElem::zero(2), RingElem::one(2)});
  const auto lifted = hensel_lift_factors(p, {q_poly({-1, 1}), q_poly({1, 1})});
  ASSERT_EQ(lifted.size(), 2u);
  EXPECT_EQ(lifted[0], Poly::linear(s));
  EXPECT_EQ(lifted[1], Poly::linear(-s));
}

TEST(Hensel, SquareRootToOrderThree) {
  const RingElem s = t_poly(3, {1, Rational(1, 2), Rational(-1, 8)});
  EXPECT_EQ(s * s, t_poly(3, {1, 1}));
  const Poly p(3, {-t_poly(3, {1, 1}), RingElem::zero(3), RingElem::one(3)});
  const auto lifted = hensel_lift_factors(p, {q_poly({-1, 1}), q_poly({1, 1})});
  ASSERT_EQ(lifted.size(), 2u);
  EXPECT_EQ(lifted[0], Poly::linear(s));
  EXPECT_EQ(lifted[1], Poly::linear(-s));
}

TEST(Hensel, SingleFactorIsReturned) {
  for (int m = 1; m <= 3; ++m) {
    const Poly p = expand_roots({{Rational(2, 3), 3}}, m);
    const auto lifted = hensel_lift_factors(p, {expand_roots({{Rational(2, 3), 3}})});
    ASSERT_EQ(lifted.size(), 1u);
    EXPECT_EQ(lifted[0], p);
  }
}

TEST(Hensel, MismatchedResidueFactorization) {
  const Poly p = expand_roots({{Rational(1), 1}, {Rational(2), 1}}, 2);
  try {
    hensel_lift_factors(p, {q_poly({-1, 1}), q_poly({-3, 1})});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BadResidueFactorization);
  }
  try {
    const Poly sq = expand_roots({{Rational(1), 2}}, 2);
    hensel_lift_factors(sq, {q_poly({-1, 1}), q_poly({-1, 1})});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotCoprime);
  }
}

TEST(HenselProperty, ProductAndResiduesAreExact) {
  Rng rng(14);
  for (int trial = 0; trial < 80; ++trial) {
    const int m = rng.uniform(2, 4);
    const int k = rng.uniform(2, 3);
    std::vector<Poly> exact_factors, residues;
    for (int i = 0; i < k; ++i) {
      const int deg = rng.uniform(1, 2);
      std::vector<RingElem> cs;
      for (int d = 0; d < deg; ++d) {
        RingElem c = rng.ring_elem(m, 3, 2);
        c[0] = Rational(0);
        cs.push_back(c);
      }
      // Distinct integer residue roots keep the residue factors coprime.
      Poly residue = expand_roots({{Rational(3 * i), deg}});
      Poly f(m, cs);
      f += residue.with_t_order(m);
      exact_factors.push_back(f);
      residues.push_back(residue);
    }
    Poly p = exact_factors[0];
    for (int i = 1; i < k; ++i) p = p * exact_factors[static_cast<std::size_t>(i)];
    const auto lifted = hensel_lift_factors(p, residues);
    ASSERT_EQ(lifted.size(), residues.size());
    Poly prod = lifted[0];
    for (std::size_t i = 1; i < lifted.size(); ++i) prod = prod * lifted[i];
    EXPECT_EQ(prod, p);
    for (std::size_t i = 0; i < lifted.size(); ++i) {
      EXPECT_TRUE(lifted[i].is_monic());
      EXPECT_EQ(lifted[i].residue(), residues[i]);
    }
  }
}

TEST(Factor, Examples) {
  EXPECT_EQ(factor_over_rationals(q_poly({0, -1, 1})),
            (std::vector<RootMultiplicity>{{Rational(0), 1}, {Rational(1), 1}}));
  const Poly p = q_poly({Rational(-1, 2), 1}) * q_poly({Rational(-1, 2), 1}) * q_poly({Rational(-1, 3), 1});
  EXPECT_EQ(factor_over_rationals(p),
            (std::vector<RootMultiplicity>{{Rational(1, 3), 1}, {Rational(1, 2), 2}}));
  try {
    factor_over_rationals(q_poly({-2, 0, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnsupportedSpectrum);
  }
}

TEST(FactorProperty, ExpandThenFactorIsIdentity) {
  Rng rng(15);
  for (int trial = 0; trial < 150; ++trial) {
    std::map<Rational, int> roots;
    int degree = 0;
    const int target = rng.uniform(1, 6);
    while (degree < target) {
      const int mult = rng.uniform(1, target - degree);
      roots[rng.rational(9, 6)] += mult;
      degree += mult;
    }
    std::vector<RootMultiplicity> expected;
    for (const auto& [r, k] : roots) expected.push_back({r, k});
    EXPECT_EQ(factor_over_rationals(expand_roots(expected)), expected);
  }
}

TEST(Factor, IrreducibleCubicTimesLinear) {
  const Poly p = q_poly({-2, 0, 0, 1}) * q_poly({Rational(-1, 2), 1});
  EXPECT_EQ(oracle::error_kind([&] { factor_over_rationals(p); }), ErrorKind::UnsupportedSpectrum);
}
