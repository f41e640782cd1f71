#pragma once

// The worked examples as concrete systems: map, maximal sets, g types and the
// q at which the extremal index ratio stabilises.

#include <cmath>
#include <vector>

#include "mevd/catalog.hpp"
#include "mevd/dynamics.hpp"
#include "mevd/extremes.hpp"
#include "mevd/observables.hpp"

namespace mevd::presets {

using catalog::ExampleId;
using engine::System;

struct Preset {
  ExampleId id;
  System system;
  unsigned q = 0;
};

inline Rational rat(long p, long q) { return Rational(p, q); }

// ε of the cat-map example.
inline constexpr long double kCatEpsilon = 1.0L / 64;

inline System cat_system(long double eps = kCatEpsilon) {
  const long double l = (3.0L + std::sqrt(5.0L)) / 2;
  System s;
  s.map = dynamics::MapSpec::cat();
  // Z1 = segment of unstable manifold through 0 of half-length ε; Z2 is the
  // piece of W^u(0) between f(Z1) and f²(Z1), seen as half-length
  // (λ² - λ)ε/2 around (λ + λ²)ε/2.
  s.obs.push_back(observables::on_segment(observables::LogType{}, {0, 0, eps}));
  s.obs.push_back(observables::on_segment(observables::LogType{}, {(l + l * l) * eps / 2, 0, (l * l - l) * eps / 2}));
  return s;
}

inline Preset preset(ExampleId id, geometry::Boundary boundary = geometry::Boundary::Circle) {
  using observables::at_points;
  using observables::LogType;
  using observables::ParetoType;
  Preset p{id, {}, 0};
  p.system.boundary = boundary;
  auto& s = p.system;
  switch (id) {
    case ExampleId::CommonPoint:
      s.map = dynamics::MapSpec::doubling();
      s.obs = {at_points(LogType{}, {rat(1, 6)}), at_points(ParetoType{1}, {rat(1, 6)})};
      p.q = 0;
      break;
    case ExampleId::DisjointPoints:
      s.map = dynamics::MapSpec::doubling();
      s.obs = {at_points(LogType{}, {rat(1, 6)}), at_points(LogType{}, {rat(5, 12)})};
      p.q = 0;
      break;
    case ExampleId::LinkedNonPeriodic:
      s.map = dynamics::MapSpec::doubling();
      s.obs = {at_points(LogType{}, {rat(1, 12)}), at_points(LogType{}, {rat(1, 6)})};
      p.q = 1;
      break;
    case ExampleId::LinkedPeriodic:
      s.map = dynamics::MapSpec::doubling();
      s.obs = {at_points(LogType{}, {rat(1, 3)}), at_points(LogType{}, {rat(2, 3)})};
      p.q = 2;
      break;
    case ExampleId::LinkedPeriodic2:
      s.map = dynamics::MapSpec::tripling();
      s.obs = {at_points(LogType{}, {rat(1, 6)}), at_points(LogType{}, {rat(1, 2)})};
      p.q = 1;
      break;
    case ExampleId::OverlapNonPeriodic:
      s.map = dynamics::MapSpec::doubling();
      s.obs = {at_points(LogType{}, {rat(1, 12), rat(1, 6)}), at_points(LogType{}, {rat(7, 12), rat(1, 6)})};
      p.q = 1;
      break;
    case ExampleId::Trivariate:
      s.map = dynamics::MapSpec::doubling();
      s.obs = {at_points(LogType{}, {rat(1, 12)}), at_points(LogType{}, {rat(7, 12)}),
               at_points(LogType{}, {rat(1, 6)})};
      p.q = 1;
      break;
    case ExampleId::OverlapPeriodic:
      s.map = dynamics::MapSpec::tripling();
      s.obs = {at_points(LogType{}, {rat(1, 6), rat(1, 2)}), at_points(LogType{}, {rat(5, 6), rat(1, 2)})};
      p.q = 1;
      break;
    case ExampleId::CatMap:
      s = cat_system();
      p.q = 2;
      break;
  }
  return p;
}

// τ on the simplex with total mass 1, as exact rationals.
inline engine::Tau simplex_tau(const std::vector<Rational>& head) {
  engine::Tau tau = head;
  Rational s = 0;
  for (const auto& a : head) s += a;
  tau.push_back(Rational(1) - s);
  return tau;
}

}  // namespace mevd::presets
