#pragma once

// Observables psi_i(x) = g_i(dist(x, Z_i)) and their exact finite-n
// thresholds: u_n(tau) is chosen so that the exceedance set {psi_i > u} has
// measure exactly tau_i / n.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "mevd/circle_geometry.hpp"
#include "mevd/dynamics.hpp"
#include "mevd/error.hpp"
#include "mevd/rational.hpp"
#include "mevd/torus.hpp"

namespace mevd::observables {

using geometry::Boundary;
using geometry::IntervalSet;

struct LogType {};
struct ParetoType {
  double alpha;
};
struct BoundedType {
  double D;
  double alpha;
};
using GType = std::variant<LogType, ParetoType, BoundedType>;

inline std::string to_string(const GType& g) {
  if (std::holds_alternative<LogType>(g)) return "log";
  if (auto* p = std::get_if<ParetoType>(&g)) return "pareto:" + format_decimal(p->alpha);
  auto& b = std::get<BoundedType>(g);
  return "bounded:" + format_decimal(b.D) + "," + format_decimal(b.alpha);
}

inline void check(const GType& g) {
  if (auto* p = std::get_if<ParetoType>(&g); p && !(p->alpha > 0)) throw Error("pareto alpha must be positive");
  if (auto* b = std::get_if<BoundedType>(&g); b && !(b->alpha > 0)) throw Error("bounded alpha must be positive");
}

// g(t) for t >= 0; +inf at t = 0 for the log and pareto types.
inline double g_apply(const GType& g, long double t) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  if (t < 0) throw Error("negative distance");
  if (std::isinf(t)) {
    if (std::holds_alternative<ParetoType>(g)) return 0.0;
    return -inf;
  }
  if (std::holds_alternative<LogType>(g)) return t == 0 ? inf : static_cast<double>(-std::log(t));
  if (auto* p = std::get_if<ParetoType>(&g)) return t == 0 ? inf : static_cast<double>(std::pow(t, -1.0L / p->alpha));
  auto& b = std::get<BoundedType>(g);
  return static_cast<double>(b.D - std::pow(t, 1.0L / b.alpha));
}

// Radius r with {g(dist) > u} = {dist < r}.
inline long double inverse(const GType& g, double u) {
  if (std::isinf(u) && u > 0) return 0;
  if (std::holds_alternative<LogType>(g)) return std::exp(-static_cast<long double>(u));
  if (auto* p = std::get_if<ParetoType>(&g)) {
    if (!(u > 0)) throw Error("pareto threshold must be positive, got " + format_decimal(u));
    return std::pow(static_cast<long double>(u), -static_cast<long double>(p->alpha));
  }
  auto& b = std::get<BoundedType>(g);
  if (u >= b.D) return 0;
  return std::pow(static_cast<long double>(b.D) - u, static_cast<long double>(b.alpha));
}

struct FinitePoints {
  std::vector<Rational> points;
};

// Piece of unstable manifold, in frame coordinates.
struct UnstableSegment {
  long double center_u = 0;
  long double center_s = 0;
  long double half_length = 0;
};

using MaximalSet = std::variant<FinitePoints, UnstableSegment>;

struct ObservableSpec {
  GType g;
  MaximalSet Z;

  bool on_circle() const noexcept { return std::holds_alternative<FinitePoints>(Z); }
  const std::vector<Rational>& points() const {
    if (!on_circle()) throw TypeMismatch("observable has no finite maximal set");
    return std::get<FinitePoints>(Z).points;
  }
  const UnstableSegment& segment() const {
    if (on_circle()) throw TypeMismatch("observable has no unstable segment");
    return std::get<UnstableSegment>(Z);
  }
};

inline ObservableSpec at_points(GType g, std::vector<Rational> points) {
  check(g);
  if (points.empty()) throw Error("maximal set must be nonempty");
  for (auto& z : points) z = mod1(z);
  std::vector<Rational> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw Error("maximal points must be distinct");
  return {g, FinitePoints{std::move(points)}};
}

inline ObservableSpec on_segment(GType g, UnstableSegment s) {
  check(g);
  if (!(s.half_length > 0)) throw Error("unstable segment needs a positive half-length");
  return {g, s};
}

// ---------------------------------------------------------------------------
// Evaluation

inline double evaluate(const ObservableSpec& obs, const Rational& x, Boundary boundary = Boundary::Circle) {
  Rational best = 1;
  for (const auto& z : obs.points()) {
    Rational d = geometry::distance(x, z, boundary);
    if (d < best) best = d;
  }
  return g_apply(obs.g, static_cast<long double>(to_double(best)));
}

inline double evaluate(const ObservableSpec& obs, double x, Boundary boundary = Boundary::Circle) {
  double best = 1;
  for (const auto& z : obs.points()) best = std::min(best, geometry::distance(x, to_double(z), boundary));
  return g_apply(obs.g, best);
}

// Torus points: distance to the segment measured along the stable axis only,
// and infinite beyond the segment's ends (the half-disc caps are dropped).
inline double evaluate(const ObservableSpec& obs, dynamics::LatticePoint2D p, const geometry::Frame& frame) {
  const auto& seg = obs.segment();
  geometry::CompiledRect probe({seg.center_u, seg.center_s, seg.half_length, 1}, frame);
  auto [du, ds] = probe.offsets(p);
  if (std::fabs(du) >= seg.half_length) return g_apply(obs.g, std::numeric_limits<long double>::infinity());
  return g_apply(obs.g, std::fabs(ds));
}

// ---------------------------------------------------------------------------
// Exceedance sets

inline IntervalSet exceedance_set_at_radius(const ObservableSpec& obs, const Rational& radius,
                                            Boundary boundary = Boundary::Circle) {
  return geometry::union_of_balls(obs.points(), radius, boundary);
}

inline IntervalSet exceedance_set(const ObservableSpec& obs, double u, Boundary boundary = Boundary::Circle) {
  long double r = inverse(obs.g, u);
  if (r <= 0) return {};
  if (r >= 1) return IntervalSet::full();
  return exceedance_set_at_radius(obs, from_double(static_cast<double>(r)), boundary);
}

inline geometry::TorusRect exceedance_rect_at_radius(const ObservableSpec& obs, long double radius) {
  const auto& seg = obs.segment();
  return {seg.center_u, seg.center_s, seg.half_length, radius};
}

inline geometry::TorusRect exceedance_rect(const ObservableSpec& obs, double u) {
  return exceedance_rect_at_radius(obs, inverse(obs.g, u));
}

// ---------------------------------------------------------------------------
// Exact quantiles

// Smallest radius r with μ(∪ balls(Z, r)) = mass. The covered mass is
// piecewise linear in r with kinks where neighbouring balls meet (and, on the
// interval, where a ball reaches 0 or 1), so it is inverted exactly by linear
// interpolation between consecutive kinks.
inline Rational quantile_radius(const std::vector<Rational>& points, const Rational& mass,
                                Boundary boundary = Boundary::Circle) {
  if (mass < 0) throw Error("negative exceedance mass");
  if (mass > 1) throw Infeasible("exceedance mass " + to_fraction_string(mass) + " exceeds 1");
  if (mass == 0) return 0;
  std::vector<Rational> z = points;
  for (auto& p : z) p = mod1(p);
  std::sort(z.begin(), z.end());

  std::set<Rational> kinks{Rational(0)};
  for (std::size_t i = 0; i + 1 < z.size(); ++i) kinks.insert((z[i + 1] - z[i]) / 2);
  if (boundary == Boundary::Circle) {
    kinks.insert((z.front() + 1 - z.back()) / 2);
  } else {
    kinks.insert(z.front());
    kinks.insert(1 - z.back());
  }

  Rational prev_r = 0, prev_m = 0;
  for (const auto& r : kinks) {
    if (r == 0) continue;
    Rational m = geometry::union_of_balls(z, r, boundary).measure();
    if (m >= mass) return prev_r + (mass - prev_m) * (r - prev_r) / (m - prev_m);
    prev_r = r;
    prev_m = m;
  }
  throw Infeasible("exceedance mass " + to_fraction_string(mass) + " is not reachable");
}

struct ThresholdVector {
  std::uint64_t n = 0;
  std::vector<double> u;
  std::vector<Rational> radius;
};

inline void check_tau(const std::vector<Rational>& tau) {
  if (tau.empty()) throw Error("frequency vector is empty");
  bool any = false;
  for (const auto& t : tau) {
    if (t < 0) throw Error("frequency vector has a negative entry");
    if (t > 0) any = true;
  }
  if (!any) throw Error("frequency vector must not be identically zero");
}

inline ThresholdVector thresholds(const std::vector<ObservableSpec>& obs, const std::vector<Rational>& tau,
                                  std::uint64_t n, Boundary boundary = Boundary::Circle) {
  if (obs.size() != tau.size()) throw Error("frequency vector length differs from the number of observables");
  if (n == 0) throw Error("block length n must be positive");
  check_tau(tau);
  ThresholdVector out;
  out.n = n;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    Rational mass = tau[i] / Rational(BigInt(n));
    Rational r;
    if (obs[i].on_circle()) {
      r = quantile_radius(obs[i].points(), mass, boundary);
    } else {
      // rectangle of measure 4 * half_length * r
      if (mass > 1) throw Infeasible("exceedance mass exceeds 1");
      r = from_double(static_cast<double>(to_double(mass) / (4 * obs[i].segment().half_length)));
    }
    out.radius.push_back(r);
    out.u.push_back(r == 0 ? std::numeric_limits<double>::infinity()
                           : g_apply(obs[i].g, static_cast<long double>(to_double(r))));
  }
  return out;
}

// U^(n)(tau) = ∪_i U_i^(n)(tau_i) on the circle.
inline IntervalSet union_exceedance(const std::vector<ObservableSpec>& obs, const ThresholdVector& th,
                                    Boundary boundary = Boundary::Circle) {
  IntervalSet u;
  for (std::size_t i = 0; i < obs.size(); ++i) u = u | exceedance_set_at_radius(obs[i], th.radius[i], boundary);
  return u;
}

inline std::vector<geometry::TorusRect> exceedance_rects(const std::vector<ObservableSpec>& obs,
                                                         const ThresholdVector& th) {
  std::vector<geometry::TorusRect> out;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    if (th.radius[i] > 0) out.push_back(exceedance_rect_at_radius(obs[i], to_double(th.radius[i])));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Overlap fractions

struct OverlapFractions {
  std::vector<Rational> p;  // μ(V_i) / μ(U_i): mass near points of Z_i not shared with another Z_j
  std::vector<Rational> q;  // μ(V̂_i ∩ ∪_{j≠i} V̂_j) / μ(V̂_i), 0 when V̂_i is empty
};

inline OverlapFractions overlap_fractions(const std::vector<ObservableSpec>& obs, const std::vector<Rational>& tau,
                                          std::uint64_t n, Boundary boundary = Boundary::Circle) {
  auto th = thresholds(obs, tau, n, boundary);
  const std::size_t d = obs.size();
  std::vector<IntervalSet> own(d), shared(d);
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<Rational> mine, common;
    for (const auto& z : obs[i].points()) {
      bool is_shared = false;
      for (std::size_t j = 0; j < d && !is_shared; ++j) {
        if (j == i) continue;
        const auto& other = obs[j].points();
        is_shared = std::find(other.begin(), other.end(), z) != other.end();
      }
      (is_shared ? common : mine).push_back(z);
    }
    own[i] = geometry::union_of_balls(mine, th.radius[i], boundary);
    shared[i] = geometry::union_of_balls(common, th.radius[i], boundary);
  }
  OverlapFractions out;
  for (std::size_t i = 0; i < d; ++i) {
    Rational total = (own[i] | shared[i]).measure();
    out.p.push_back(total == 0 ? Rational(0) : own[i].measure() / total);
    IntervalSet others;
    for (std::size_t j = 0; j < d; ++j) {
      if (j != i) others = others | shared[j];
    }
    Rational base = shared[i].measure();
    out.q.push_back(base == 0 ? Rational(0) : (shared[i] & others).measure() / base);
  }
  return out;
}

}  // namespace mevd::observables
