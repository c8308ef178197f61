#include <gtest/gtest.h>

#include "kolchin/jets.hpp"
#include "support/generators.hpp"

using namespace kolchin;

namespace {

CPoly X(int n, int i) { return CPoly::variable(n, i); }
CPoly C(int n, const Scalar& c) { return CPoly::constant(n, c); }
Vector V(std::initializer_list<long> xs) {
  Vector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

const std::vector<Scalar> one_one{Scalar(1), Scalar(1)};

std::vector<CPoly> parabola() { return {X(2, 1) - X(2, 0) * X(2, 0)}; }
std::vector<CPoly> tangent() { return {X(2, 1) - C(2, 2) * X(2, 0) + C(2, 1)}; }

bool same_space(const std::vector<Vector>& a, const std::vector<Vector>& b, int dim) {
  return span_contains(a, b, dim) && span_contains(b, a, dim);
}

}  // namespace

TEST(JetOperators, Enumeration) {
  auto ops = jet_operators(2, 2);
  ASSERT_EQ(ops.size(), 5u);
  std::vector<std::string> names;
  for (const auto& o : ops) names.push_back(jet_operator_name(o));
  EXPECT_EQ(names, (std::vector<std::string>{"x1", "x2", "x1^2", "x1*x2", "x2^2"}));
  EXPECT_EQ(jet_operators(3, 3).size(), 19u);
}

TEST(JetSpace, Parabola) {
  JetSubspace j1 = jet_space(parabola(), 2, one_one, 1);
  EXPECT_EQ(j1.dimension(), 1);
  EXPECT_EQ(j1.basis, (std::vector<Vector>{V({1, 2})}));
  EXPECT_TRUE(same_space(j1.equations, {V({-2, 1})}, 2));

  JetSubspace j2 = jet_space(parabola(), 2, one_one, 2);
  EXPECT_EQ(j2.dimension(), 2);
  // coordinates (x, y, xx, xy, yy)
  std::vector<Vector> displayed{V({-2, 1, -1, 0, 0}), V({0, 0, -2, 1, 0}), V({0, 0, 0, -2, 1})};
  EXPECT_TRUE(same_space(j2.equations, displayed, 5));
  for (const auto& b : j2.basis)
    for (const auto& e : displayed) {
      Scalar dot;
      for (int i = 0; i < 5; ++i) dot += b[i] * e[i];
      EXPECT_TRUE(dot.is_zero());
    }

  JetSubspace plane = jet_space({}, 2, one_one, 1);
  EXPECT_EQ(plane.dimension(), 2);
  EXPECT_THROW(jet_space(parabola(), 2, {Scalar(1), Scalar(2)}, 1), PreconditionError);
}

TEST(JetInclude, Examples) {
  EXPECT_TRUE(jet_include(parabola(), parabola(), 2, one_one, 2));
  std::vector<CPoly> point{X(2, 0) - C(2, 1), X(2, 1) - C(2, 1)};
  EXPECT_EQ(jet_space(point, 2, one_one, 1).dimension(), 0);
  EXPECT_TRUE(jet_include(point, parabola(), 2, one_one, 1));
  EXPECT_THROW(jet_include(parabola(), point, 2, one_one, 1), PreconditionError);
}

TEST(JetSeparate, Examples) {
  JetSeparation s = jet_separate(parabola(), tangent(), 2, one_one, 2);
  EXPECT_TRUE(s.separated);
  EXPECT_EQ(s.order, 2);
  JetSeparation e = jet_separate(parabola(), parabola(), 2, one_one, 3);
  EXPECT_FALSE(e.separated);
  EXPECT_EQ(e.order, 3);
  std::vector<CPoly> other{X(2, 1) - C(2, 3) * X(2, 0) + C(2, 2)};
  JetSeparation l = jet_separate(tangent(), other, 2, one_one, 1);
  EXPECT_TRUE(l.separated);
  EXPECT_EQ(l.order, 1);
}

TEST(JetSpace, OverFunctionField) {
  Scalar t = Scalar::t(1);
  JetSubspace j = jet_space(parabola(), 2, {t, t * t}, 1);
  ASSERT_EQ(j.dimension(), 1);
  EXPECT_EQ(j.basis[0], (Vector{Scalar(1), Scalar(2) * t}));
}

namespace {

// Random hypersurface of degree <= 3 through a random rational point.
std::pair<CPoly, std::vector<Scalar>> random_hypersurface(proptest::Gen& g, int n) {
  CPoly f(n);
  for (int k = 0; k < g.uniform(1, 5); ++k) {
    Mono e(n, 0);
    int d = g.uniform(1, 3);
    for (int j = 0; j < d; ++j) ++e[g.uniform(0, n - 1)];
    f.add_term(e, Scalar(g.small_rational()));
  }
  std::vector<Scalar> a;
  for (int i = 0; i < n; ++i) a.emplace_back(g.small_rational());
  f -= CPoly::constant(n, f.evaluate(a));
  return {f, a};
}

}  // namespace

TEST(JetProperties, TangentDimensionMatchesJacobian) {
  proptest::Gen g(111);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    int n = g.uniform(1, 3);
    auto [f, a] = random_hypersurface(g, n);
    if (f.is_zero()) continue;
    int jac = 0;
    for (int i = 0; i < n; ++i)
      if (!f.derivative(i).evaluate(a).is_zero()) jac = 1;
    ASSERT_EQ(jet_space({f}, n, a, 1).dimension(), n - jac) << f.to_string();
    ++checked;
  }
  EXPECT_GT(checked, 40);
}

// Order-r jets sit inside order-(r+1) jets by zero extension; in particular the
// order-<=r coordinates of j_{r+1} cover j_r.
TEST(JetProperties, MonotoneAndNested) {
  proptest::Gen g(222);
  for (int trial = 0; trial < 25; ++trial) {
    int n = g.uniform(1, 2);
    auto [f, a] = random_hypersurface(g, n);
    std::vector<CPoly> gens{f};
    for (int r = 1; r <= 2; ++r) {
      JetSubspace lo = jet_space(gens, n, a, r), hi = jet_space(gens, n, a, r + 1);
      ASSERT_LE(lo.dimension(), hi.dimension());
      std::vector<Vector> ext, proj;
      for (auto b : lo.basis) {
        b.resize(hi.ambient());
        ext.push_back(b);
      }
      ASSERT_TRUE(span_contains(hi.basis, ext, hi.ambient())) << f.to_string();
      for (const auto& b : hi.basis) proj.emplace_back(b.begin(), b.begin() + lo.ambient());
      ASSERT_TRUE(span_contains(proj, lo.basis, lo.ambient())) << f.to_string();
    }
  }
}

TEST(JetProperties, SeparationIgnoresGeneratorScrambling) {
  proptest::Gen g(333);
  std::vector<CPoly> curve{X(2, 1) - X(2, 0) * X(2, 0), X(2, 0) * X(2, 1) - X(2, 0) * X(2, 0) * X(2, 0)};
  for (int trial = 0; trial < 15; ++trial) {
    Scalar p(g.small_rational()), q(g.small_rational());
    if (p.is_zero()) p = Scalar(1);
    std::vector<CPoly> scrambled{C(2, p) * curve[0] + C(2, q) * curve[1], curve[1] + curve[0]};
    if (p == Scalar(1) && q == Scalar(1)) continue;
    for (const auto& other : {parabola(), tangent()}) {
      JetSeparation a = jet_separate(curve, other, 2, one_one, 3);
      JetSeparation b = jet_separate(scrambled, other, 2, one_one, 3);
      ASSERT_EQ(a.separated, b.separated);
      ASSERT_EQ(a.order, b.order);
    }
  }
}
