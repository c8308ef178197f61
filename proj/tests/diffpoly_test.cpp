#include <gtest/gtest.h>

#include "kolchin/diffpoly.hpp"
#include "support/diff_generators.hpp"

using namespace kolchin;

namespace {

// K = Q(t), delta = d/dt, sigma(t) = t + 1
DiffRing ordinary(int n = 1) { return DiffRing(n, 1, ScalarField(1, 1, {1})); }

}  // namespace

TEST(Ranking, CanonicalTuple) {
  DiffRing R(2, 2);
  AlgInd a = R.indet(1, {1, 1}), b = R.indet(2, {2, 0});
  EXPECT_EQ(compare_indets(a, b), -1);
  EXPECT_EQ(compare_indets(b, a), 1);
  EXPECT_EQ(compare_indets(R.indet(1), R.indet(2)), -1);
  EXPECT_EQ(compare_indets(a, a), 0);
  // d2 outranks d1 at equal order and variable
  EXPECT_EQ(compare_indets(R.indet(1, {1, 0}), R.indet(1, {0, 1})), -1);
  EXPECT_THROW(compare_indets(R.indet(1, {}, 1), a), PreconditionError);
  EXPECT_THROW(compare_indets(a, DiffRing(1, 1).indet(1, {1})), PreconditionError);
}

TEST(ApplyDelta, Examples) {
  DiffRing R = ordinary();
  DiffPoly x = R.x(1), dx = R.dx(1, 1), d2x = R.dx(1, 1, 2);
  DiffPoly f = dx * dx - 4 * x;
  EXPECT_EQ(R.apply_delta(f, 1), 2 * dx * d2x - 4 * dx);
  EXPECT_EQ(f.to_string(), "d1(x1)^2 - 4*x1");
  EXPECT_EQ(R.apply_delta(f, 1).to_string(), "2*d1(x1)*d1^2(x1) - 4*d1(x1)");
  EXPECT_TRUE(R.apply_delta(DiffPoly(Scalar(mpq_class(3, 4))), 1).is_zero());
  EXPECT_EQ(R.apply_delta(DiffPoly(Scalar::t(1)) * x, 1), x + DiffPoly(Scalar::t(1)) * dx);

  DiffRing S(1, 2);
  EXPECT_EQ(S.apply_delta(S.dx(1, 1), 2), S.apply_delta(S.dx(1, 2), 1));
  EXPECT_EQ(S.apply_delta(S.dx(1, 1), 2).to_string(), "d2(d1(x1))");
  EXPECT_THROW(S.apply_delta(S.x(1), 3), PreconditionError);
}

TEST(ApplySigma, Examples) {
  DiffRing R = ordinary();
  DiffPoly t(Scalar::t(1)), dx = R.dx(1, 1);
  EXPECT_EQ(R.apply_sigma(t * dx, 1), DiffPoly(Scalar::t(1) + Scalar(1)) * dx);
  DiffPoly f = t * t * dx - R.x(1);
  EXPECT_EQ(R.apply_sigma(R.apply_sigma(f, 1), -1), f);
  DiffPoly q = dx * dx - 4 * R.x(1);
  EXPECT_EQ(R.apply_sigma(q, 3), q);
  EXPECT_EQ(R.apply_sigma(q, 1, true).to_string(), "d1(s(x1))^2 - 4*s(x1)");
  EXPECT_EQ(R.apply_sigma(R.x(1), -1, true).to_string(), "s^-1(x1)");
}

TEST(LeaderData, Examples) {
  DiffRing R = ordinary();
  DiffPoly x = R.x(1), dx = R.dx(1, 1);
  LeaderData d = R.leader_data(dx * dx - 4 * x);
  EXPECT_EQ(d.leader, R.indet(1, {1}));
  EXPECT_EQ(d.degree, 2);
  EXPECT_EQ(d.separant, 2 * dx);
  EXPECT_EQ(d.initial, DiffPoly(1));

  DiffRing S(2, 2);
  DiffPoly g = S.x(1) * S.dx(2, 2) + S.x(2);
  LeaderData e = S.leader_data(g);
  EXPECT_EQ(e.leader, S.indet(2, {0, 1}));
  EXPECT_EQ(e.degree, 1);
  EXPECT_EQ(e.separant, S.x(1));
  EXPECT_EQ(e.initial, S.x(1));

  EXPECT_THROW(R.leader_data(DiffPoly(5)), PreconditionError);
}

TEST(CompareRank, Examples) {
  DiffRing R = ordinary();
  DiffPoly x = R.x(1), dx = R.dx(1, 1), d2x = R.dx(1, 1, 2);
  EXPECT_EQ(R.compare_rank(dx * dx, d2x), -1);
  EXPECT_EQ(R.compare_rank(x, x * x), -1);
  EXPECT_EQ(R.compare_rank(dx * x, dx * x), 0);
  EXPECT_EQ(R.compare_rank(DiffPoly(7), x), -1);
  EXPECT_EQ(R.compare_rank(DiffPoly(7), DiffPoly(2)), 0);
}

TEST(Evaluate, Examples) {
  DiffRing R = ordinary();
  DiffPoly x = R.x(1), dx = R.dx(1, 1);
  Scalar t = Scalar::t(1);
  EXPECT_TRUE(R.evaluate(dx - 1, {t}).is_zero());
  EXPECT_TRUE(R.evaluate(dx * dx - 4 * x, {t * t}).is_zero());
  EXPECT_TRUE(R.evaluate(x, {Scalar(0)}).is_zero());
  // s(x) at t^2 is (t+1)^2
  DiffPoly sx = R.apply_sigma(x, 1, true);
  EXPECT_EQ(R.evaluate(sx, {t * t}), (t + Scalar(1)) * (t + Scalar(1)));
  EXPECT_THROW(R.evaluate(x, {}), PreconditionError);
}

TEST(DiffPolyBasics, PartialAndCoefficients) {
  DiffRing R(2, 1);
  DiffPoly x = R.x(1), y = R.x(2), dy = R.dx(2, 1);
  DiffPoly f = x * dy * dy + 3 * dy - y;
  AlgInd v = R.indet(2, {1});
  auto c = f.coefficients_in(v);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0], -y);
  EXPECT_EQ(c[1], DiffPoly(3));
  EXPECT_EQ(c[2], x);
  EXPECT_EQ(f.partial(v), 2 * x * dy + 3);
  EXPECT_EQ(f.substitute(v, x), x * x * x + 3 * x - y);
  EXPECT_TRUE(is_proper_derivative_of(R.indet(1, {2}), R.indet(1)));
  EXPECT_FALSE(is_proper_derivative_of(R.indet(1), R.indet(1)));
  EXPECT_FALSE(is_derivative_of(R.indet(2, {1}), R.indet(1)));
}

TEST(DiffPolyBasics, NegatedSumCoefficientsKeepParentheses) {
  DiffRing R(1, 1, ScalarField(1, 1, {0}));
  Scalar c = Scalar(2) * Scalar::t(1) - Scalar(mpq_class(2, 3));
  EXPECT_EQ(DiffPoly(-c).to_string(), "-(2*t1 - 2/3)");
  EXPECT_EQ((R.x(1) - DiffPoly(c)).to_string(), "x1 - (2*t1 - 2/3)");
  EXPECT_EQ((R.x(1) + DiffPoly(c)).to_string(), "x1 + 2*t1 - 2/3");
  EXPECT_EQ((DiffPoly(-c) * R.x(1)).to_string(), "-(2*t1 - 2/3)*x1");
}

TEST(DiffPolyProperties, DerivationsCommute) {
  proptest::Gen g(101);
  DiffRing R(2, 2, ScalarField(2, 2, {1, 0}));
  for (int trial = 0; trial < 40; ++trial) {
    DiffPoly f = proptest::random_diffpoly(g, R);
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j)
        ASSERT_EQ(R.apply_delta(R.apply_delta(f, i), j), R.apply_delta(R.apply_delta(f, j), i)) << f.to_string();
  }
}

TEST(DiffPolyProperties, SigmaCommutesWithDelta) {
  proptest::Gen g(202);
  DiffRing R(2, 2, ScalarField(2, 2, {1, mpq_class(-1, 2)}));
  for (int trial = 0; trial < 40; ++trial) {
    DiffPoly f = proptest::random_diffpoly(g, R);
    int p = g.uniform(-2, 2);
    bool move = g.coin();
    for (int i = 1; i <= 2; ++i)
      ASSERT_EQ(R.apply_sigma(R.apply_delta(f, i), p, move), R.apply_delta(R.apply_sigma(f, p, move), i))
          << f.to_string();
  }
}

TEST(DiffPolyProperties, SeparantAndInitialRankLower) {
  proptest::Gen g(303);
  DiffRing R(2, 2, ScalarField(1, 2, {1}));
  int checked = 0;
  for (int trial = 0; trial < 80; ++trial) {
    DiffPoly f = proptest::random_diffpoly(g, R, 2, 4, 3);
    if (f.is_constant()) continue;
    LeaderData d = R.leader_data(f);
    ASSERT_EQ(R.compare_rank(d.separant, f), -1) << f.to_string();
    ASSERT_EQ(R.compare_rank(d.initial, f), -1) << f.to_string();
    // f = sum g_i v^i with initial g_d
    auto c = f.coefficients_in(d.leader);
    DiffPoly back;
    for (std::size_t i = 0; i < c.size(); ++i) back += c[i] * DiffPoly::indet(d.leader, static_cast<int>(i));
    ASSERT_EQ(back, f);
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(DiffPolyProperties, EvaluateIsHomomorphism) {
  proptest::Gen g(404);
  DiffRing R(2, 1, ScalarField(1, 1, {2}));
  for (int trial = 0; trial < 30; ++trial) {
    DiffPoly f = proptest::random_diffpoly(g, R), h = proptest::random_diffpoly(g, R);
    std::vector<Scalar> a{g.scalar(1), g.scalar(1)};
    ASSERT_EQ(R.evaluate(f + h, a), R.evaluate(f, a) + R.evaluate(h, a));
    ASSERT_EQ(R.evaluate(f * h, a), R.evaluate(f, a) * R.evaluate(h, a));
    ASSERT_EQ(R.evaluate(R.apply_delta(f, 1), a), R.field().derive(R.evaluate(f, a), 1));
    ASSERT_EQ(R.evaluate(R.apply_sigma(f, 1, true), a), R.field().shift(R.evaluate(f, a), 1));
  }
}
