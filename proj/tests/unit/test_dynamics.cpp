#include <gtest/gtest.h>

#include <set>

#include "mevd/dynamics.hpp"

using namespace mevd;
using namespace mevd::dynamics;
using geometry::ball;

namespace {
Rational r(long p, long q = 1) { return Rational(p, q); }
}  // namespace

TEST(Step, DoublingShiftsDigits) {
  LazyDigitPoint x(2, {0, 1, 1, 0, 1, 0});
  x.step();
  EXPECT_EQ(x.digits(5), (std::vector<unsigned>{1, 1, 0, 1, 0}));
}

TEST(Step, TriplingShiftsDigits) {
  LazyDigitPoint x(3, {2, 1});
  Point p = x;
  step(MapSpec::tripling(), p);
  EXPECT_EQ(std::get<LazyDigitPoint>(p).digits(2), (std::vector<unsigned>{1, 0}));
}

TEST(Step, CatMapHalfLattice) {
  LatticePoint2D p{1ull << 63, 0};
  auto q = step(MapSpec::cat().toral_data(), p);
  EXPECT_EQ(q, (LatticePoint2D{0, 1ull << 63}));
}

TEST(Step, WrongPointKind) {
  Point p = LatticePoint2D{};
  EXPECT_THROW(step(MapSpec::doubling(), p), TypeMismatch);
  Point x = LazyDigitPoint(3, {1});
  EXPECT_THROW(step(MapSpec::doubling(), x), TypeMismatch);
}

TEST(Step, LatticeIsBijectiveOnSublattice) {
  // (i/4, j/4) for i, j in 0..3
  const auto& t = MapSpec::cat().toral_data();
  std::set<std::pair<std::uint64_t, std::uint64_t>> image;
  for (std::uint64_t i = 0; i < 4; ++i) {
    for (std::uint64_t j = 0; j < 4; ++j) {
      auto q = step(t, LatticePoint2D{i << 62, j << 62});
      EXPECT_EQ(q.u % (1ull << 62), 0u);
      EXPECT_EQ(q.v % (1ull << 62), 0u);
      image.insert({q.u, q.v});
    }
  }
  EXPECT_EQ(image.size(), 16u);
}

TEST(MapSpec, RejectsNonHyperbolic) {
  EXPECT_THROW(MapSpec::toral({1, 1, 0, 1}), Error);
  EXPECT_THROW(MapSpec::toral({2, 0, 0, 2}), Error);
  EXPECT_THROW(MapSpec::expanding(1), Error);
  EXPECT_EQ(MapSpec::toral({2, 1, 1, 1}).name(), "cat");
}

TEST(Preimage, DoublingTwoBranches) {
  Rational e = r(1, 100);
  auto s = geometry::IntervalSet::from_pieces({{r(1, 3) - e, r(1, 3) + e}});
  auto p = preimage(MapSpec::doubling(), s);
  auto want = geometry::IntervalSet::from_pieces({{r(1, 6) - e / 2, r(1, 6) + e / 2}, {r(2, 3) - e / 2, r(2, 3) + e / 2}});
  EXPECT_EQ(p, want);
}

TEST(Preimage, FullAndEmpty) {
  EXPECT_TRUE(preimage(MapSpec::tripling(), geometry::IntervalSet::full()).is_full());
  EXPECT_TRUE(preimage(MapSpec::doubling(), {}).empty());
}

TEST(IteratedPreimage, ZeroStepsIsIdentity) {
  auto s = ball(r(1, 5), r(1, 50));
  EXPECT_EQ(iterated_preimage(MapSpec::doubling(), s, 0), s);
}

TEST(IteratedPreimage, BranchCount) {
  auto s = geometry::IntervalSet::from_pieces({{r(1, 10), r(1, 5)}});
  auto p = iterated_preimage(MapSpec::doubling(), s, 2);
  ASSERT_EQ(p.pieces().size(), 4u);
  for (const auto& piece : p.pieces()) EXPECT_EQ(piece.hi - piece.lo, r(1, 40));
}

TEST(IteratedPreimage, BudgetExceeded) {
  std::vector<geometry::Piece> pieces;
  for (int k = 0; k < 100; ++k) pieces.push_back({r(2 * k, 200), r(2 * k + 1, 200)});
  auto s = geometry::IntervalSet::from_pieces(pieces);
  try {
    iterated_preimage(MapSpec::doubling(), s, 70);
    FAIL() << "no budget error";
  } catch (const BudgetExceeded& e) {
    EXPECT_GT(e.achieved(), 0u);
    EXPECT_LT(e.achieved(), 70u);
  }
}

TEST(IteratedPreimage, TypeMismatchOnTorus) {
  EXPECT_THROW(preimage(MapSpec::cat(), geometry::IntervalSet::full()), TypeMismatch);
}

TEST(Pullback, WindowedAgreesWithGlobal) {
  auto map = MapSpec::tripling();
  auto target = ball(r(1, 6), r(1, 40)) | ball(r(1, 2), r(1, 30));
  auto window = ball(r(1, 2), r(1, 9));
  for (unsigned j = 0; j <= 4; ++j) {
    auto global = window & iterated_preimage(map, target, j);
    EXPECT_EQ(pullback_within(map, target, window, j), global) << "j=" << j;
    EXPECT_EQ(pullback_measure_within(map, target, window, j), global.measure()) << "j=" << j;
  }
}

TEST(FirstReturn, PeriodTwo) {
  EXPECT_EQ(first_return(MapSpec::doubling(), ball(r(1, 3), r(1, 100)), 10), 2u);
}

TEST(FirstReturn, PeriodFour) {
  EXPECT_EQ(first_return(MapSpec::doubling(), ball(r(1, 5), r(1, 1000)), 10), 4u);
}

TEST(FirstReturn, FullCircle) {
  EXPECT_EQ(first_return(MapSpec::doubling(), geometry::IntervalSet::full(), 10), 1u);
}

TEST(FirstReturn, NoneWithinCap) {
  EXPECT_EQ(first_return(MapSpec::doubling(), ball(r(1, 5), r(1, 1000)), 3), std::nullopt);
}

TEST(Sampling, Deterministic) {
  auto a = sample_stationary(MapSpec::doubling(), 11, 2);
  auto b = sample_stationary(MapSpec::doubling(), 11, 2);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(std::get<LazyDigitPoint>(a[i]).window(), std::get<LazyDigitPoint>(b[i]).window());
  }
  auto c = sample_stationary(MapSpec::cat(), 11, 2);
  auto d = sample_stationary(MapSpec::cat(), 11, 2);
  EXPECT_EQ(std::get<LatticePoint2D>(c[1]), std::get<LatticePoint2D>(d[1]));
}

TEST(Sampling, EmptyStream) { EXPECT_TRUE(sample_stationary(MapSpec::tripling(), 1, 0).empty()); }

TEST(Sampling, MeanOfFirstCoordinate) {
  const std::size_t count = 1'000'000;
  long double sum = 0;
  for (std::size_t i = 0; i < count; ++i) sum += LazyDigitPoint(2, 5, i).approx();
  EXPECT_NEAR(static_cast<double>(sum / count), 0.5, 0.002);

  long double lat = 0;
  for (std::size_t i = 0; i < count; ++i) lat += std::ldexp(static_cast<long double>(lattice_point(5, i).u), -64);
  EXPECT_NEAR(static_cast<double>(lat / count), 0.5, 0.002);
}

TEST(Sampling, DoublingOrbitStaysUniform) {
  // after 200 steps the window holds only fresh digits
  const std::size_t count = 200'000;
  long double sum = 0;
  for (std::size_t i = 0; i < count; ++i) {
    LazyDigitPoint x(2, 9, i);
    x.step(200);
    sum += x.approx();
  }
  EXPECT_NEAR(static_cast<double>(sum / count), 0.5, 3 / (2 * std::sqrt(3.0 * count)));
}
