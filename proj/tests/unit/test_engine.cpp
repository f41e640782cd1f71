#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "mevd/catalog.hpp"
#include "mevd/extremes.hpp"
#include "mevd/presets.hpp"

using namespace mevd;
using catalog::ExampleId;
using engine::Tau;

namespace {

Rational r(long p, long q = 1) { return Rational(p, q); }

engine::System sys(ExampleId id) { return presets::preset(id).system; }

Rational exact(const engine::EstimateResult& e) {
  EXPECT_TRUE(e.exact_value.has_value()) << e.note;
  return e.exact_value.value_or(Rational(-1));
}

// μ(A^(q)) / μ(U) by a separate route: on the partition of the circle cut at
// every point of f^{-j}(∂U), j ≤ q, the indicator of A^(q) is constant, so it
// is read off at cell midpoints by iterating x -> b x mod 1 exactly.
Rational theta_oracle(const engine::System& s, const Tau& tau, std::uint64_t n, unsigned q) {
  auto u = engine::exceedance_union(s, tau, n);
  const unsigned b = s.map.base();
  std::set<Rational> cuts = {Rational(0), Rational(1)};
  for (const auto& p : u.pieces()) {
    for (const auto& e : {p.lo, p.hi}) {
      long scale = 1;
      for (unsigned j = 0; j <= q; ++j, scale *= b) {
        for (long k = 0; k < scale; ++k) cuts.insert((mod1(e) + k) / scale);
      }
    }
  }
  Rational a = 0;
  for (auto it = cuts.begin(); std::next(it) != cuts.end(); ++it) {
    const Rational& lo = *it;
    const Rational& hi = *std::next(it);
    Rational x = (lo + hi) / 2;
    if (!u.contains(x)) continue;
    bool returns = false;
    Rational y = x;
    for (unsigned j = 1; j <= q && !returns; ++j) {
      y = mod1(y * b);
      returns = u.contains(y);
    }
    if (!returns) a += hi - lo;
  }
  return a / u.measure();
}

}  // namespace

TEST(GammaHat, CommonPointIsMax) {
  EXPECT_EQ(exact(engine::gamma_hat(sys(ExampleId::CommonPoint), {r(1), r(2)}, 1 << 18)), 2);
}

TEST(GammaHat, DisjointPointsIsSum) {
  EXPECT_EQ(exact(engine::gamma_hat(sys(ExampleId::DisjointPoints), {r(1), r(2)}, 1 << 18)), 3);
}

TEST(GammaHat, OverlapSubtractsHalfMin) {
  EXPECT_EQ(exact(engine::gamma_hat(sys(ExampleId::OverlapNonPeriodic), {r(1), r(1)}, 1 << 18)), r(3, 2));
}

TEST(GammaHat, TorusIsTypeMismatch) {
  EXPECT_THROW(engine::gamma_hat(presets::cat_system(), {r(1), r(1)}, 100), TypeMismatch);
}

TEST(AqSet, QZeroIsExceedanceSet) {
  auto s = sys(ExampleId::LinkedPeriodic);
  EXPECT_EQ(engine::aq_set(s, {r(1), r(1)}, 1024, 0).set, engine::exceedance_union(s, {r(1), r(1)}, 1024));
}

TEST(Theta, LinkedPeriodicHalf) {
  EXPECT_EQ(exact(engine::theta_exact(sys(ExampleId::LinkedPeriodic), {r(1), r(1)}, 1 << 18, 2)), r(1, 2));
}

TEST(Theta, LinkedNonPeriodicHalf) {
  EXPECT_EQ(exact(engine::theta_exact(sys(ExampleId::LinkedNonPeriodic), {r(1), r(1)}, 1 << 18, 1)), r(3, 4));
}

TEST(Theta, DisjointIsOneForEveryQ) {
  for (unsigned q = 0; q <= 5; ++q) {
    EXPECT_EQ(exact(engine::theta_exact(sys(ExampleId::DisjointPoints), {r(1), r(3)}, 1 << 18, q)), 1) << q;
  }
}

TEST(Theta, CatalogSpotValues) {
  struct Spot {
    ExampleId id;
    Tau tau;
    Rational want;
  };
  std::vector<Spot> spots = {
      {ExampleId::LinkedPeriodic2, {r(1), r(1)}, r(2, 3)},
      {ExampleId::OverlapNonPeriodic, {r(1), r(1)}, r(2, 3)},
      {ExampleId::OverlapPeriodic, {r(1), r(1)}, r(2, 3)},
      {ExampleId::Trivariate, {r(1), r(1), r(1)}, r(2, 3)},
  };
  for (const auto& s : spots) {
    auto p = presets::preset(s.id);
    EXPECT_EQ(exact(engine::theta_exact(p.system, s.tau, 1 << 18, p.q)), s.want) << catalog::to_string(s.id);
    EXPECT_EQ(catalog::theta<Rational>(s.id, s.tau), s.want) << catalog::to_string(s.id);
  }
}

TEST(Theta, MonotoneInQ) {
  for (auto id : catalog::kAllExamples) {
    if (!catalog::on_circle(id)) continue;
    Tau tau(catalog::dimension(id), r(1));
    tau[0] = r(3);
    Rational prev = 2;
    for (unsigned q = 0; q <= 4; ++q) {
      Rational t = exact(engine::theta_exact(sys(id), tau, 1 << 12, q));
      EXPECT_LE(t, prev) << catalog::to_string(id) << " q=" << q;
      EXPECT_GE(t, 0);
      prev = t;
    }
  }
}

// θ(cτ) at block length c n uses the same sets as θ(τ) at n; at n past n0 the
// ratio no longer depends on n either.
TEST(Theta, Homogeneity) {
  for (auto id : {ExampleId::LinkedPeriodic, ExampleId::OverlapNonPeriodic, ExampleId::OverlapPeriodic}) {
    auto p = presets::preset(id);
    Tau tau = {r(2), r(3)};
    const std::uint64_t n = 1 << 16;
    Rational t = exact(engine::theta_exact(p.system, tau, n, p.q));
    Rational g = exact(engine::gamma_hat(p.system, tau, n));
    for (auto c : {r(1, 2), r(2), r(3)}) {
      Tau ct = {c * tau[0], c * tau[1]};
      auto cn = static_cast<std::uint64_t>(to_double(c * Rational(n)));
      EXPECT_EQ(exact(engine::theta_exact(p.system, ct, cn, p.q)), t);
      EXPECT_EQ(exact(engine::gamma_hat(p.system, ct, cn)), c * g);
      EXPECT_EQ(exact(engine::theta_exact(p.system, ct, n << 2, p.q)), t);
      EXPECT_EQ(exact(engine::gamma_hat(p.system, ct, n << 2)), c * g);
    }
  }
}

TEST(Theta, AgreesWithCellOracle) {
  for (auto id : catalog::kAllExamples) {
    if (!catalog::on_circle(id)) continue;
    auto s = sys(id);
    std::vector<Tau> taus;
    for (auto a : {r(1, 5), r(1, 2), r(5, 7)}) {
      Tau t(catalog::dimension(id), r(1, 2));
      t[0] = a;
      t[1] = 1 - a;
      taus.push_back(t);
    }
    for (const auto& tau : taus) {
      for (std::uint64_t n : {16ull, 40ull, 1024ull}) {
        for (unsigned q = 0; q <= 3; ++q) {
          EXPECT_EQ(exact(engine::theta_exact(s, tau, n, q)), theta_oracle(s, tau, n, q))
              << catalog::to_string(id) << " n=" << n << " q=" << q;
        }
      }
    }
  }
}

TEST(AqSet, WindowedAgreesWithGlobal) {
  for (auto id : {ExampleId::LinkedPeriodic, ExampleId::OverlapPeriodic, ExampleId::Trivariate}) {
    auto s = sys(id);
    Tau tau(catalog::dimension(id), r(1));
    for (unsigned q = 0; q <= 4; ++q) {
      EXPECT_EQ(engine::aq_set(s, tau, 256, q).set, engine::aq_set_global(s, tau, 256, q)) << q;
    }
  }
}

TEST(Theta, BudgetIsReportedNotThrown) {
  auto r0 = engine::theta_exact(sys(ExampleId::OverlapPeriodic), {r(1), r(1)}, 8, 12, 50);
  EXPECT_EQ(r0.status, engine::Status::BudgetExceeded);
  EXPECT_TRUE(std::isnan(r0.value));
}

TEST(ThetaLimit, LinkedPeriodicSettlesAtTwo) {
  auto lim = engine::theta_limit(sys(ExampleId::LinkedPeriodic), {r(4), r(1)}, {0, 1, 2, 3, 4, 5},
                                 {1 << 10, 1 << 14, 1 << 18});
  EXPECT_EQ(lim.result.status, engine::Status::Ok);
  EXPECT_EQ(lim.q_star, 2u);
  ASSERT_TRUE(lim.n0.has_value());
  EXPECT_EQ(exact(lim.result), r(3, 5));
  EXPECT_EQ(catalog::theta<Rational>(ExampleId::LinkedPeriodic, {r(4, 5), r(1, 5)}), r(3, 5));
}

TEST(ThetaLimit, OverlapNonPeriodicSettlesAtOne) {
  auto lim = engine::theta_limit(sys(ExampleId::OverlapNonPeriodic), {r(1), r(1)}, {0, 1, 2, 3, 4},
                                 {1 << 10, 1 << 14, 1 << 18});
  EXPECT_EQ(lim.q_star, 1u);
  EXPECT_EQ(exact(lim.result), r(2, 3));
}

TEST(ThetaLimit, ReportsNonConvergence) {
  // q schedule stops before the ratio settles
  auto lim = engine::theta_limit(sys(ExampleId::LinkedPeriodic), {r(4), r(1)}, {0, 1}, {1 << 10, 1 << 14});
  EXPECT_EQ(lim.result.status, engine::Status::NonConverged);
  EXPECT_FALSE(lim.q_star.has_value());
}

TEST(ThetaLimit, RejectsBadSchedules) {
  auto s = sys(ExampleId::LinkedPeriodic);
  EXPECT_THROW(engine::theta_limit(s, {r(1), r(1)}, {}, {16}), Error);
  EXPECT_THROW(engine::theta_limit(s, {r(1), r(1)}, {2, 1}, {16}), Error);
  EXPECT_THROW(engine::theta_limit(s, {r(1), r(1)}, {1}, {32, 16}), Error);
}

TEST(ConditionConfig, Defaults) {
  auto c = engine::ConditionCheckConfig::defaults(1 << 20);
  EXPECT_EQ(c.k_n, 1024u);
  EXPECT_EQ(c.t_n, 32u);
  EXPECT_EQ(c.last_index(1 << 20), 1023u);
  c.j_max = 20;
  EXPECT_EQ(c.last_index(1 << 20), 20u);
  EXPECT_TRUE(engine::schedule_is_sparse({1 << 10, 1 << 14, 1 << 18, 1 << 22}));
}

TEST(DeltaPrime, DisjointIsZero) {
  auto cfg = engine::ConditionCheckConfig::defaults(1ull << 40);
  cfg.j_max = 20;
  auto d = engine::delta_prime_exact(sys(ExampleId::DisjointPoints), {r(1), r(1)}, 1ull << 40, 0, cfg);
  EXPECT_EQ(exact(d), 0);
}

TEST(DeltaPrime, FullCircle) {
  engine::System s;
  s.map = dynamics::MapSpec::doubling();
  s.obs = {observables::at_points(observables::LogType{}, {r(1, 3)})};
  const std::uint64_t n = 64;
  auto cfg = engine::ConditionCheckConfig::defaults(n);
  for (unsigned q : {0u}) {
    auto d = engine::delta_prime_exact(s, {Rational(BigInt(n))}, n, q, cfg);
    EXPECT_EQ(exact(d), Rational(BigInt(n * (n / cfg.k_n - q - 1))));
  }
}

TEST(DeltaPrime, PositiveBeforeStabilisingQ) {
  auto cfg = engine::ConditionCheckConfig::defaults(1ull << 40);
  cfg.j_max = 20;
  auto s = sys(ExampleId::LinkedPeriodic);
  EXPECT_GT(exact(engine::delta_prime_exact(s, {r(4), r(1)}, 1ull << 40, 1, cfg)), 0);
  EXPECT_EQ(exact(engine::delta_prime_exact(s, {r(4), r(1)}, 1ull << 40, 2, cfg)), 0);
}

TEST(Autocovariance, DisjointIsMinusSquare) {
  auto s = sys(ExampleId::DisjointPoints);
  auto a = engine::aq_set(s, {r(1), r(1)}, 1 << 12, 0).set.measure();
  for (const auto& c : engine::autocovariance_exact(s, {r(1), r(1)}, 1 << 12, 0, 4)) EXPECT_EQ(c, -a * a);
}

TEST(GValue, FromThetaAndGammaHat) {
  auto th = engine::EstimateResult::exactly(r(1, 2), 100, 2);
  auto gh = engine::EstimateResult::exactly(r(2), 100, 0);
  EXPECT_NEAR(engine::g_value(th, gh).value, std::exp(-1.0), 1e-15);
  auto one = engine::EstimateResult::exactly(r(1), 100, 0);
  auto sum = engine::EstimateResult::exactly(r(5, 2), 100, 0);
  EXPECT_NEAR(engine::g_value(one, sum).value, std::exp(-2.5), 1e-15);
}

TEST(Theta, IndependentOfGType) {
  auto log_sys = sys(ExampleId::OverlapNonPeriodic);
  auto mixed = log_sys;
  mixed.obs[0] = observables::at_points(observables::ParetoType{2}, log_sys.obs[0].points());
  mixed.obs[1] = observables::at_points(observables::BoundedType{3, 0.5}, log_sys.obs[1].points());
  for (const Tau& tau : {Tau{r(1), r(1)}, Tau{r(1), r(4)}}) {
    EXPECT_EQ(exact(engine::gamma_hat(mixed, tau, 1 << 14)), exact(engine::gamma_hat(log_sys, tau, 1 << 14)));
    EXPECT_EQ(exact(engine::theta_exact(mixed, tau, 1 << 14, 1)), exact(engine::theta_exact(log_sys, tau, 1 << 14, 1)));
  }
}

TEST(ThetaLimit, BudgetStatusPropagates) {
  auto lim = engine::theta_limit(sys(ExampleId::OverlapPeriodic), {r(1), r(1)}, {0, 1, 12}, {8}, 50);
  EXPECT_EQ(lim.result.status, engine::Status::BudgetExceeded);
}
