#include <gtest/gtest.h>

#include <cmath>

#include "mevd/catalog.hpp"
#include "mevd/monte_carlo.hpp"
#include "mevd/presets.hpp"

using namespace mevd;
using catalog::ExampleId;
using engine::Tau;

namespace {
Rational r(long p, long q = 1) { return Rational(p, q); }
constexpr std::uint64_t kSeed = 424242;
}  // namespace

TEST(BlockMaxima, IndependentOfThreadCount) {
  auto s = presets::preset(ExampleId::LinkedPeriodic).system;
  auto a = mc::mc_block_maxima(s, {r(1), r(1)}, 200, 5000, kSeed, 1);
  auto b = mc::mc_block_maxima(s, {r(1), r(1)}, 200, 5000, kSeed, 3);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.std_error, b.std_error);
  auto c = mc::mc_block_maxima(s, {r(1), r(1)}, 200, 5000, kSeed + 1, 1);
  EXPECT_NE(a.value, c.value);
}

TEST(BlockMaxima, NearLimitLaw) {
  auto s = presets::preset(ExampleId::DisjointPoints).system;
  auto g = mc::mc_block_maxima(s, {r(1), r(1)}, 2000, 40000, kSeed);
  EXPECT_NEAR(g.value, std::exp(-2.0), 3 * g.std_error + 0.01);
}

TEST(BlockMaxima, ZeroTrialsRejected) {
  auto s = presets::preset(ExampleId::DisjointPoints).system;
  EXPECT_THROW(mc::mc_block_maxima(s, {r(1), r(1)}, 10, 0, kSeed), Error);
}

TEST(ThetaRuns, LinkedNonPeriodicThreeQuarters) {
  auto p = presets::preset(ExampleId::LinkedNonPeriodic);
  auto t = mc::mc_theta_runs(p.system, {r(1), r(1)}, 1000, p.q, 2'000'000, kSeed);
  EXPECT_NEAR(t.value, 0.75, 3 * t.std_error);
}

TEST(ThetaRuns, OverlapPeriodicTwoThirds) {
  auto p = presets::preset(ExampleId::OverlapPeriodic);
  auto t = mc::mc_theta_runs(p.system, {r(1), r(1)}, 1000, p.q, 2'000'000, kSeed);
  EXPECT_NEAR(t.value, 2.0 / 3.0, 3 * t.std_error);
}

TEST(ThetaRuns, EverythingExceeds) {
  auto p = presets::preset(ExampleId::LinkedPeriodic);
  auto t = mc::mc_theta_runs(p.system, {r(1000), r(1000)}, 1000, 1, 10'000, kSeed);
  EXPECT_EQ(t.value, 0.0);
}

TEST(ThetaRuns, NoExceedancesIsUndefined) {
  auto p = presets::preset(ExampleId::LinkedPeriodic);
  auto t = mc::mc_theta_runs(p.system, {r(1), r(1)}, 1ull << 60, 1, 1000, kSeed);
  EXPECT_EQ(t.status, engine::Status::Undefined);
}

TEST(ThetaRuns, AgreesWithExactOnEveryCircleExample) {
  const std::uint64_t n = 1024;
  for (auto id : catalog::kAllExamples) {
    if (!catalog::on_circle(id)) continue;
    auto p = presets::preset(id);
    Tau tau(catalog::dimension(id), r(1));
    auto ex = engine::theta_exact(p.system, tau, n, p.q);
    auto mc = mc::mc_theta_runs(p.system, tau, n, p.q, 1'000'000, kSeed);
    EXPECT_NEAR(mc.value, ex.value, 3 * mc.std_error) << catalog::to_string(id);
  }
}

TEST(ThetaRuns, CatMapDeterministic) {
  auto s = presets::cat_system();
  auto a = mc::mc_theta_runs(s, {r(1), r(1)}, 500, 2, 200'000, kSeed);
  auto b = mc::mc_theta_runs(s, {r(1), r(1)}, 500, 2, 200'000, kSeed);
  EXPECT_EQ(a.value, b.value);
  EXPECT_GT(a.value, 0.0);
  EXPECT_LE(a.value, 1.0);
}

TEST(DeltaPrimeMc, FullCircle) {
  engine::System s;
  s.map = dynamics::MapSpec::doubling();
  s.obs = {observables::at_points(observables::LogType{}, {r(1, 3)})};
  const std::uint64_t n = 64;
  auto cfg = engine::ConditionCheckConfig::defaults(n);
  auto d = mc::mc_delta_prime(s, {Rational(64)}, n, 0, cfg, 1000, kSeed);
  EXPECT_DOUBLE_EQ(d.value, static_cast<double>(n * cfg.last_index(n)));
}

TEST(DeltaPrimeMc, NearExact) {
  auto s = presets::preset(ExampleId::LinkedPeriodic).system;
  const std::uint64_t n = 256;
  auto cfg = engine::ConditionCheckConfig::defaults(n);
  auto ex = engine::delta_prime_exact(s, {r(4), r(1)}, n, 1, cfg);
  auto d = mc::mc_delta_prime(s, {r(4), r(1)}, n, 1, cfg, 2'000'000, kSeed);
  EXPECT_NEAR(d.value, ex.value, 3 * d.std_error + 1e-3);
}
