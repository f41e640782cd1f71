#include <gtest/gtest.h>

#include <cmath>

#include "mevd/observables.hpp"
#include "mevd/presets.hpp"

using namespace mevd;
using namespace mevd::observables;

namespace {
Rational r(long p, long q = 1) { return Rational(p, q); }
}  // namespace

TEST(Evaluate, LogAtOneOverE) {
  auto o = at_points(LogType{}, {r(1, 2)});
  EXPECT_NEAR(evaluate(o, 0.5 + std::exp(-1.0)), 1.0, 1e-12);
}

TEST(Evaluate, ParetoQuarter) {
  auto o = at_points(ParetoType{1}, {r(0)});
  EXPECT_DOUBLE_EQ(evaluate(o, r(1, 4)), 4.0);
}

TEST(Evaluate, BoundedAtMaximalPoint) {
  auto o = at_points(BoundedType{5, 1}, {r(1, 3)});
  EXPECT_DOUBLE_EQ(evaluate(o, r(1, 3)), 5.0);
}

TEST(Evaluate, LogAtMaximalPointIsInfinite) {
  auto o = at_points(LogType{}, {r(1, 3)});
  EXPECT_TRUE(std::isinf(evaluate(o, r(1, 3))));
}

TEST(Spec, Rejections) {
  EXPECT_THROW(at_points(LogType{}, {}), Error);
  EXPECT_THROW(at_points(LogType{}, {r(1, 3), r(4, 3)}), Error);
  EXPECT_THROW(at_points(ParetoType{0}, {r(1, 3)}), Error);
  EXPECT_THROW(at_points(LogType{}, {r(1, 3)}).segment(), TypeMismatch);
}

TEST(ExceedanceSet, LogEight) {
  auto o = at_points(LogType{}, {r(1, 2)});
  auto s = exceedance_set(o, std::log(8.0));
  ASSERT_EQ(s.pieces().size(), 1u);
  EXPECT_NEAR(to_double(s.pieces()[0].lo), 0.375, 1e-15);
  EXPECT_NEAR(to_double(s.pieces()[0].hi), 0.625, 1e-15);
}

TEST(ExceedanceSet, TwoDisjointBalls) {
  auto o = at_points(LogType{}, {r(1, 4), r(3, 5)});
  double u = 6.0;
  auto s = exceedance_set(o, u);
  EXPECT_EQ(s.components(), 2u);
  EXPECT_NEAR(to_double(s.measure()), 4 * std::exp(-u), 1e-15);
}

TEST(ExceedanceSet, ShrinksToNothing) {
  auto o = at_points(ParetoType{1}, {r(1, 4)});
  double prev = 1;
  for (double u : {10.0, 100.0, 1e4, 1e8}) {
    double m = to_double(exceedance_set(o, u).measure());
    EXPECT_LT(m, prev);
    prev = m;
  }
  EXPECT_LT(prev, 1e-7);
  EXPECT_TRUE(exceedance_set(o, std::numeric_limits<double>::infinity()).empty());
}

TEST(Thresholds, LogInteriorPoint) {
  auto th = thresholds({at_points(LogType{}, {r(1, 3)})}, {r(1)}, 100);
  EXPECT_EQ(th.radius[0], r(1, 200));
  EXPECT_NEAR(th.u[0], std::log(200.0), 1e-12);
}

TEST(Thresholds, ParetoInteriorPoint) {
  auto th = thresholds({at_points(ParetoType{1}, {r(1, 3)})}, {r(1)}, 100);
  EXPECT_EQ(th.radius[0], r(1, 200));
  EXPECT_NEAR(th.u[0], 200.0, 1e-9);
}

TEST(Thresholds, ZeroFrequencyNeverExceeds) {
  auto th = thresholds({at_points(LogType{}, {r(1, 3)}), at_points(LogType{}, {r(1, 5)})}, {r(0), r(1)}, 100);
  EXPECT_TRUE(std::isinf(th.u[0]) && th.u[0] > 0);
  EXPECT_EQ(th.radius[0], 0);
}

TEST(Thresholds, Errors) {
  std::vector<ObservableSpec> one = {at_points(LogType{}, {r(1, 3)})};
  EXPECT_THROW(thresholds(one, {r(1), r(1)}, 10), Error);
  EXPECT_THROW(thresholds(one, {r(0)}, 10), Error);
  EXPECT_THROW(thresholds(one, {r(-1)}, 10), Error);
  EXPECT_THROW(thresholds(one, {r(1)}, 0), Error);
  EXPECT_THROW(thresholds(one, {r(3)}, 2), Infeasible);
}

TEST(Thresholds, IntervalBoundaryAtEndpoint) {
  // at an endpoint only one side of the ball counts: c = 1
  auto th = thresholds({at_points(LogType{}, {r(0)})}, {r(1)}, 100, geometry::Boundary::Interval);
  EXPECT_EQ(th.radius[0], r(1, 100));
}

// μ(U_i) = τ_i / n exactly, including radii past the point where balls merge.
TEST(Quantile, ExactMass) {
  std::vector<std::vector<Rational>> geometries = {
      {r(1, 3)}, {r(1, 12), r(1, 6)}, {r(1, 6), r(1, 2), r(5, 6)}, {r(0), r(1, 100)}, {r(97, 100), r(1, 50)}};
  for (const auto& z : geometries) {
    for (auto b : {geometry::Boundary::Circle, geometry::Boundary::Interval}) {
      for (auto mass : {r(1, 1000), r(1, 20), r(1, 7), r(1, 2), r(9, 10)}) {
        Rational rad = quantile_radius(z, mass, b);
        EXPECT_EQ(geometry::union_of_balls(z, rad, b).measure(), mass)
            << "points=" << z.size() << " mass=" << to_fraction_string(mass) << " boundary=" << geometry::to_string(b);
      }
    }
  }
}

TEST(Quantile, IndependentOfGType) {
  std::vector<Rational> z = {r(1, 12), r(1, 6)};
  std::vector<GType> types = {LogType{}, ParetoType{0.5}, ParetoType{3}, BoundedType{2, 1.5}};
  Rational first;
  for (std::size_t k = 0; k < types.size(); ++k) {
    auto th = thresholds({at_points(types[k], z)}, {r(3)}, 64);
    if (k == 0) first = th.radius[0];
    EXPECT_EQ(th.radius[0], first);
  }
}

TEST(Quantile, RoundTripThroughG) {
  for (GType g : {GType{LogType{}}, GType{ParetoType{2}}}) {
    auto th = thresholds({at_points(g, {r(2, 7)})}, {r(1)}, 1000);
    EXPECT_NEAR(static_cast<double>(inverse(g, th.u[0])), to_double(th.radius[0]), 1e-12 * to_double(th.radius[0]));
  }
  // u = D - r^2 sits next to D, so the double threshold keeps only ~9 digits of r
  GType bounded = BoundedType{4, 0.5};
  auto th = thresholds({at_points(bounded, {r(2, 7)})}, {r(1)}, 1000);
  EXPECT_NEAR(static_cast<double>(inverse(bounded, th.u[0])), to_double(th.radius[0]), 1e-6 * to_double(th.radius[0]));
}

TEST(Overlap, SharedPointHalf) {
  auto p = presets::preset(catalog::ExampleId::OverlapNonPeriodic);
  auto f = overlap_fractions(p.system.obs, {r(1), r(1)}, 1 << 12);
  EXPECT_EQ(f.p[0], r(1, 2));
  EXPECT_EQ(f.p[1], r(1, 2));
  EXPECT_EQ(f.q[0], r(1));
  EXPECT_EQ(f.q[1], r(1));
}

TEST(Overlap, DisjointSetsHaveNoShare) {
  auto p = presets::preset(catalog::ExampleId::DisjointPoints);
  auto f = overlap_fractions(p.system.obs, {r(1), r(2)}, 1 << 12);
  EXPECT_EQ(f.q[0], 0);
  EXPECT_EQ(f.q[1], 0);
  EXPECT_EQ(f.p[0], 1);
}

TEST(Overlap, UnequalFrequencies) {
  auto p = presets::preset(catalog::ExampleId::OverlapNonPeriodic);
  auto f = overlap_fractions(p.system.obs, {r(1), r(3)}, 1 << 12);
  EXPECT_EQ(f.q[0], 1);
  EXPECT_EQ(f.q[1], r(1, 3));
}

TEST(Thresholds, NestedInTau) {
  auto p = presets::preset(catalog::ExampleId::OverlapPeriodic);
  std::vector<std::vector<Rational>> taus = {{r(1, 4), r(1)}, {r(1, 2), r(1)}, {r(1), r(2)}, {r(3), r(2)}};
  for (std::size_t k = 1; k < taus.size(); ++k) {
    auto a = thresholds(p.system.obs, taus[k - 1], 256);
    auto b = thresholds(p.system.obs, taus[k], 256);
    for (std::size_t i = 0; i < 2; ++i) {
      if (taus[k][i] > taus[k - 1][i]) {
        EXPECT_LT(b.u[i], a.u[i]);
      }
    }
    auto ua = union_exceedance(p.system.obs, a), ub = union_exceedance(p.system.obs, b);
    EXPECT_EQ(ua - ub, geometry::IntervalSet());
  }
}
