#include <gtest/gtest.h>

#include <cmath>

#include "mevd/commands.hpp"
#include "mevd/report.hpp"

using namespace mevd;
using catalog::ExampleId;
using report::Provenance;

namespace {
Rational r(long p, long q = 1) { return Rational(p, q); }
}  // namespace

TEST(Report, ExactMatchesClosedForm) {
  auto p = presets::preset(ExampleId::LinkedPeriodic);
  auto rep = report::build(p, {r(1), r(1)}, 1 << 18, {});
  ASSERT_NE(rep.find("theta", Provenance::Exact), nullptr);
  ASSERT_NE(rep.find("theta", Provenance::ClosedForm), nullptr);
  EXPECT_EQ(rep.find("theta", Provenance::Exact)->estimate.value, rep.find("theta", Provenance::ClosedForm)->estimate.value);
  EXPECT_EQ(rep.find("gamma_hat", Provenance::Exact)->estimate.value, 2.0);
  EXPECT_NEAR(rep.find("G", Provenance::Exact)->estimate.value, std::exp(-1.0), 1e-15);
  EXPECT_NEAR(rep.find("G", Provenance::ClosedForm)->estimate.value, rep.find("H", Provenance::ClosedForm)->estimate.value,
              1e-12);
  EXPECT_NEAR(rep.find("D", Provenance::ClosedForm)->estimate.value, 2.0 / 3.0, 1e-15);
  EXPECT_EQ(rep.find("theta", Provenance::MonteCarlo), nullptr);
  EXPECT_FALSE(rep.bias_bound.has_value());
}

TEST(Report, CatMapCarriesBiasBound) {
  auto p = presets::preset(ExampleId::CatMap);
  report::ReportOptions opt;
  opt.mc = true;
  opt.orbit_length = 100'000;
  opt.seed = 3;
  auto rep = report::build(p, {r(1, 2), r(1, 2)}, 1000, opt);
  EXPECT_EQ(rep.find("theta", Provenance::Exact), nullptr);
  ASSERT_NE(rep.find("theta", Provenance::MonteCarlo), nullptr);
  ASSERT_TRUE(rep.bias_bound.has_value());
  // n Σ π r_i² with r_i = (τ_i / n) / (4 h_i)
  double want = 0;
  for (const auto& o : p.system.obs) {
    double rad = 0.5 / 1000 / (4 * static_cast<double>(o.segment().half_length));
    want += std::acos(-1.0) * rad * rad;
  }
  EXPECT_NEAR(*rep.bias_bound, 1000 * want, 1e-12);
  EXPECT_NEAR(report::cat_bias_bound(p.system, {r(1, 2), r(1, 2)}, 10000), *rep.bias_bound / 10, 1e-12);
}

TEST(Report, OverlapDriftRows) {
  auto c = config::from_preset(ExampleId::OverlapNonPeriodic);
  c.taus = {{r(1), r(3)}};
  c.n_schedule = {1 << 8, 1 << 12};
  c.q_max = 1;
  auto p = csv::parse(commands::exact(c, true).table.str());
  std::size_t drift = 0;
  for (const auto& row : p.rows) {
    const auto& q = row[p.column("quantity")];
    if (q == "overlap_q2") {
      EXPECT_EQ(row[p.column("fraction")], "1/3");
    }
    if (q.find("_drift") != std::string::npos) {
      EXPECT_EQ(row[p.column("fraction")], "0");
      ++drift;
    }
  }
  EXPECT_EQ(drift, 2u);
}

TEST(Report, CatMapMcHasBiasRow) {
  auto c = config::from_preset(ExampleId::CatMap);
  c.mode = config::Mode::MonteCarlo;
  c.seed = 1;
  c.orbit_length = 10'000;
  c.n_schedule = {1000};
  c.taus = {{r(1), r(1)}};
  auto text = commands::monte_carlo(c).table.str();
  EXPECT_NE(text.find("bias_bound"), std::string::npos);
}
