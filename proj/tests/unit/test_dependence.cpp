#include <gtest/gtest.h>

#include <cmath>

#include "mevd/catalog.hpp"
#include "mevd/dependence.hpp"

using namespace mevd;
using catalog::ExampleId;
using dependence::Vec;

TEST(ClosedForm, LinkedPeriodic) {
  auto df = dependence::closed_form(ExampleId::LinkedPeriodic);
  EXPECT_NEAR(df.pickands({0.5}), 2.0 / 3.0, 1e-15);
  EXPECT_EQ(df.marginals, (Vec{0.75, 0.75}));
  for (double a : {0.1, 0.4, 0.9}) {
    Vec tau = {a, 1 - a};
    EXPECT_NEAR(df.gamma(tau), 4.0 / 3.0 * df.theta(tau) * df.gamma_hat(tau), 1e-15);
  }
}

TEST(ClosedForm, CatMap) {
  auto df = dependence::closed_form(ExampleId::CatMap);
  EXPECT_NEAR(df.pickands({0.5}), 0.75, 1e-15);
  EXPECT_NEAR(catalog::cat_turning_point(), 0.7639, 5e-5);
  EXPECT_NEAR(df.marginals[0], 1 - 1 / catalog::cat_lambda(), 1e-15);
  EXPECT_NEAR(df.theta({0.5, 0.5}), 1 - (1 + 1 / catalog::cat_lambda()) / 4, 1e-12);
}

TEST(ClosedForm, TrivariateCentre) {
  EXPECT_EQ(catalog::theta<Rational>(ExampleId::Trivariate, {Rational(1), Rational(1), Rational(1)}), Rational(2, 3));
}

TEST(Pickands, Independent) {
  auto df = dependence::closed_form(ExampleId::DisjointPoints);
  for (double a = 0; a <= 1; a += 0.125) EXPECT_DOUBLE_EQ(dependence::pickands(df, {a}), 1.0);
}

TEST(Pickands, PerfectAssociation) {
  auto df = dependence::closed_form(ExampleId::CommonPoint);
  for (double a = 0; a <= 1; a += 0.125) EXPECT_DOUBLE_EQ(dependence::pickands(df, {a}), std::max(a, 1 - a));
}

TEST(Pickands, LinkedPeriodic2UpperBranch) {
  auto df = dependence::closed_form(ExampleId::LinkedPeriodic2);
  for (double a : {0.4, 0.6, 0.9}) EXPECT_NEAR(df.pickands({a}), (1 + a) / 2, 1e-15);
}

TEST(Pickands, OffSimplex) {
  auto df = dependence::closed_form(ExampleId::LinkedPeriodic);
  EXPECT_THROW(df.pickands({-0.1}), Error);
  EXPECT_THROW(df.pickands({0.6, 0.6}), Error);
  EXPECT_THROW(df.pickands({0.1, 0.1, 0.1}), Error);
}

TEST(Copula, IndependentAndComonotone) {
  auto ind = dependence::closed_form(ExampleId::DisjointPoints);
  auto com = dependence::closed_form(ExampleId::CommonPoint);
  EXPECT_NEAR(dependence::to_copula(ind, {0.3, 0.6}), 0.18, 1e-15);
  EXPECT_NEAR(dependence::to_copula(com, {0.3, 0.6}), 0.3, 1e-15);
  for (auto id : catalog::kAllExamples) {
    auto df = dependence::closed_form(id);
    EXPECT_NEAR(df.copula(Vec(df.dim, 1.0)), 1.0, 1e-15) << df.name;
    EXPECT_EQ(df.copula(Vec(df.dim, 0.0)), 0.0);
  }
}

TEST(Copula, HMatchesG) {
  for (auto id : catalog::kAllExamples) {
    auto df = dependence::closed_form(id);
    Vec tau(df.dim, 0.7);
    tau[0] = 1.9;
    Vec t;
    for (double x : tau) t.push_back(std::exp(-x));
    EXPECT_NEAR(dependence::to_H(df, t), df.G(tau), 1e-12) << df.name;
  }
}

TEST(Logistic, Examples) {
  for (double a : {0.0, 0.3, 0.5, 1.0}) EXPECT_NEAR(dependence::logistic_D(a, 1), 1.0, 1e-15);
  for (double b : {0.1, 0.5, 0.9}) {
    EXPECT_DOUBLE_EQ(dependence::logistic_D(0, b), 1.0);
    EXPECT_DOUBLE_EQ(dependence::logistic_D(1, b), 1.0);
  }
  EXPECT_NEAR(dependence::logistic_D(0.5, 0.5), std::sqrt(0.5), 1e-15);
  EXPECT_THROW(dependence::logistic_D(0.5, 0), Error);
  EXPECT_THROW(dependence::logistic_D(0.5, 1.5), Error);
}

TEST(Logistic, MonotoneInBeta) {
  for (double a = 0.01; a < 1; a += 0.01) {
    double prev = 0;
    for (double b = 0.1; b <= 1.0001; b += 0.1) {
      double d = dependence::logistic_D(a, std::min(b, 1.0));
      EXPECT_GE(d, prev - 1e-15);
      prev = d;
    }
  }
}

TEST(Validate, EveryCatalogEntryPasses) {
  for (auto id : catalog::kAllExamples) {
    auto rep = dependence::validate(dependence::closed_form(id), 0.01);
    EXPECT_GT(rep.points_checked, 0u);
    EXPECT_TRUE(rep.ok()) << rep.name << ": " << (rep.ok() ? "" : rep.violations[0].check + " at " + rep.violations[0].where);
  }
}

TEST(Validate, LogisticFamilyPasses) {
  for (double b = 0.1; b < 0.95; b += 0.1) {
    auto rep = dependence::validate(dependence::logistic(b), 0.01);
    EXPECT_TRUE(rep.ok()) << rep.name << ": " << (rep.ok() ? "" : rep.violations[0].check);
  }
  EXPECT_TRUE(dependence::validate(dependence::logistic(0.5, 3), 0.05).ok());
}

TEST(Validate, SquaredPickandsFailsLowerBound) {
  dependence::DependenceFunctions bad;
  bad.name = "D(a)=a^2";
  bad.dim = 2;
  bad.gamma = [](const Vec& t) {
    double s = t[0] + t[1];
    return s == 0 ? 0.0 : s * (t[0] / s) * (t[0] / s);
  };
  bad.gamma_hat = bad.gamma;
  bad.theta = [](const Vec&) { return 1.0; };
  bad.marginals = {1, 1};
  auto rep = dependence::validate(bad, 0.01);
  ASSERT_FALSE(rep.ok());
  bool lower = false;
  for (const auto& v : rep.violations) {
    if (v.check == "pickands lower bound" && v.where == "(0.25,0.75)") {
      lower = true;
      EXPECT_DOUBLE_EQ(v.got, 0.0625);
      EXPECT_DOUBLE_EQ(v.bound, 0.75);
    }
  }
  EXPECT_TRUE(lower);
}

TEST(Validate, CatalogDIsContinuousAtBreakpoints) {
  for (auto id : catalog::kAllExamples) {
    if (catalog::dimension(id) != 2) continue;
    auto df = dependence::closed_form(id);
    for (double b : catalog::pickands_breakpoints(id)) {
      EXPECT_NEAR(df.pickands({b - 1e-9}), df.pickands({b + 1e-9}), 1e-8) << df.name << " at " << b;
    }
  }
}
