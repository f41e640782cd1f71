#pragma once

// Orbit statistics: block maxima, the runs estimator of the extremal index
// and a Monte Carlo version of the Δ^(q) sum. Every random quantity is keyed
// by (seed, stream), so results do not depend on the thread count.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "mevd/dynamics.hpp"
#include "mevd/extremes.hpp"
#include "mevd/lazy_digits.hpp"
#include "mevd/observables.hpp"
#include "mevd/parallel.hpp"
#include "mevd/torus.hpp"

namespace mevd::mc {

using engine::EstimateResult;
using engine::Status;
using engine::System;
using engine::Tau;

// Orbit of an expanding circle map observed through the exceedance set U.
class CircleOrbit {
 public:
  using Point = dynamics::LazyDigitPoint;

  CircleOrbit(unsigned base, const geometry::IntervalSet& u) : base_(base), set_(u, base) {}

  Point start(std::uint64_t seed, std::uint64_t stream) const { return Point(base_, seed, stream); }
  bool exceeds(Point& x) const { return set_.contains(x); }
  void step(Point& x) const { x.step(); }

 private:
  unsigned base_;
  dynamics::CompiledSet set_;
};

// Orbit of a toral automorphism on the 2^-64 lattice, observed through a
// union of rectangles.
class TorusOrbit {
 public:
  using Point = dynamics::LatticePoint2D;

  TorusOrbit(const dynamics::ToralAuto& map, const std::vector<geometry::TorusRect>& rects,
             const geometry::Frame& frame)
      : map_(map) {
    for (const auto& r : rects) rects_.emplace_back(r, frame);
  }

  Point start(std::uint64_t seed, std::uint64_t stream) const { return dynamics::lattice_point(seed, stream); }
  bool exceeds(const Point& x) const {
    for (const auto& r : rects_) {
      if (r.contains(x)) return true;
    }
    return false;
  }
  void step(Point& x) const { x = dynamics::step(map_, x); }

 private:
  dynamics::ToralAuto map_;
  std::vector<geometry::CompiledRect> rects_;
};

// Calls fn with the orbit matching the system.
template <class Fn>
auto with_orbit(const System& sys, const Tau& tau, std::uint64_t n, Fn&& fn) {
  auto th = observables::thresholds(sys.obs, tau, n, sys.boundary);
  if (sys.circle()) {
    CircleOrbit orbit(sys.map.base(), observables::union_exceedance(sys.obs, th, sys.boundary));
    return fn(orbit);
  }
  if (!sys.torus()) throw TypeMismatch("observables do not match the map");
  TorusOrbit orbit(sys.map.toral_data(), observables::exceedance_rects(sys.obs, th), geometry::eigen_frame(sys.map));
  return fn(orbit);
}

inline constexpr std::uint64_t kTrialChunk = 1024;

// Fraction of fresh stationary orbits X_0..X_{n-1} that never enter U.
template <class Orbit>
EstimateResult block_maxima(const Orbit& orbit, std::uint64_t n, std::uint64_t trials, std::uint64_t seed,
                            unsigned threads = 0) {
  if (trials == 0) throw Error("mc_block_maxima needs at least one trial");
  auto counts = map_chunks<std::uint64_t>(trials, kTrialChunk, threads, [&](std::uint64_t, std::uint64_t b, std::uint64_t e) {
    std::uint64_t quiet = 0;
    for (std::uint64_t t = b; t < e; ++t) {
      auto x = orbit.start(seed, t);
      bool hit = false;
      for (std::uint64_t i = 0; i < n; ++i) {
        if (orbit.exceeds(x)) {
          hit = true;
          break;
        }
        orbit.step(x);
      }
      if (!hit) ++quiet;
    }
    return quiet;
  });
  std::uint64_t quiet = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  EstimateResult r;
  r.value = static_cast<double>(quiet) / static_cast<double>(trials);
  r.std_error = std::sqrt(r.value * (1 - r.value) / static_cast<double>(trials));
  r.n = n;
  r.seed = seed;
  r.trials = trials;
  return r;
}

inline EstimateResult mc_block_maxima(const System& sys, const Tau& tau, std::uint64_t n, std::uint64_t trials,
                                      std::uint64_t seed, unsigned threads = 0) {
  return with_orbit(sys, tau, n, [&](const auto& orbit) { return block_maxima(orbit, n, trials, seed, threads); });
}

namespace detail {
// Ratio Σa / Σc over batches, with the delta-method batch-means error.
inline void ratio_with_batches(const std::vector<double>& a, const std::vector<double>& c, EstimateResult& r) {
  double sa = std::accumulate(a.begin(), a.end(), 0.0);
  double sc = std::accumulate(c.begin(), c.end(), 0.0);
  if (sc == 0) {
    r.value = std::nan("");
    r.std_error = std::nan("");
    r.status = Status::Undefined;
    r.note = "no exceedances";
    return;
  }
  r.value = sa / sc;
  const double b = static_cast<double>(a.size());
  double ss = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    double e = a[k] - r.value * c[k];
    ss += e * e;
  }
  double cbar = sc / b;
  r.std_error = b > 1 ? std::sqrt(ss / (b * (b - 1))) / cbar : std::nan("");
}
}  // namespace detail

inline constexpr unsigned kBatches = 50;

// Runs estimator along one orbit of length L: exceedances followed by q
// non-exceedances, over all exceedances.
template <class Orbit>
EstimateResult theta_runs(const Orbit& orbit, std::uint64_t n, unsigned q, std::uint64_t length,
                          std::uint64_t seed, unsigned batches = kBatches) {
  if (length == 0) throw Error("mc_theta_runs needs a positive orbit length");
  if (batches == 0 || batches > length) batches = static_cast<unsigned>(std::min<std::uint64_t>(length, kBatches));
  std::vector<double> opens(batches, 0), hits(batches, 0);
  auto batch_of = [&](std::uint64_t i) { return static_cast<std::size_t>((i * batches) / length); };

  auto x = orbit.start(seed, 0);
  bool have_prev = false;
  std::uint64_t prev = 0;
  const std::uint64_t horizon = length + q;
  for (std::uint64_t t = 0; t < horizon; ++t) {
    if (orbit.exceeds(x)) {
      if (have_prev && prev < length && t - prev > q) opens[batch_of(prev)] += 1;
      if (t < length) hits[batch_of(t)] += 1;
      have_prev = true;
      prev = t;
    }
    orbit.step(x);
  }
  if (have_prev && prev < length) opens[batch_of(prev)] += 1;

  EstimateResult r;
  r.n = n;
  r.q = q;
  r.seed = seed;
  r.trials = length;
  detail::ratio_with_batches(opens, hits, r);
  return r;
}

inline EstimateResult mc_theta_runs(const System& sys, const Tau& tau, std::uint64_t n, unsigned q,
                                    std::uint64_t orbit_length, std::uint64_t seed) {
  return with_orbit(sys, tau, n, [&](const auto& orbit) { return theta_runs(orbit, n, q, orbit_length, seed); });
}

// n Σ_{j=q+1}^{J} μ(A^(q) ∩ f^{-j} A^(q)) from visit frequencies on one orbit.
template <class Orbit>
EstimateResult delta_prime_runs(const Orbit& orbit, std::uint64_t n, unsigned q, std::uint64_t last,
                                std::uint64_t length, std::uint64_t seed, unsigned batches = kBatches) {
  if (length == 0) throw Error("delta_prime in mc mode needs a positive orbit length");
  if (batches == 0 || batches > length) batches = static_cast<unsigned>(std::min<std::uint64_t>(length, kBatches));
  const std::uint64_t horizon = length + last + q + 1;
  std::vector<std::uint8_t> in_u(horizon);
  auto x = orbit.start(seed, 0);
  for (std::uint64_t t = 0; t < horizon; ++t) {
    in_u[t] = orbit.exceeds(x) ? 1 : 0;
    orbit.step(x);
  }
  std::vector<std::uint64_t> seen(horizon + 1, 0);
  for (std::uint64_t t = 0; t < horizon; ++t) seen[t + 1] = seen[t] + in_u[t];
  // a_i: in U now and out of U for the next q steps
  const std::uint64_t span = length + last + 1;
  std::vector<std::uint64_t> prefix(span + 1, 0);
  for (std::uint64_t i = 0; i < span; ++i) {
    bool a = in_u[i] && seen[i + q + 1] == seen[i + 1];
    prefix[i + 1] = prefix[i] + (a ? 1 : 0);
  }
  std::vector<double> pairs(batches, 0), visits(batches, 0);
  for (std::uint64_t i = 0; i < length; ++i) {
    auto k = static_cast<std::size_t>((i * batches) / length);
    visits[k] += 1;
    if (prefix[i + 1] == prefix[i] || last <= q) continue;
    pairs[k] += static_cast<double>(prefix[i + last + 1] - prefix[i + q + 1]);
  }
  EstimateResult r;
  r.n = n;
  r.q = q;
  r.seed = seed;
  r.trials = length;
  detail::ratio_with_batches(pairs, visits, r);
  r.value *= static_cast<double>(n);
  r.std_error *= static_cast<double>(n);
  r.note = "j=" + std::to_string(q + 1) + ".." + std::to_string(last);
  return r;
}

inline EstimateResult mc_delta_prime(const System& sys, const Tau& tau, std::uint64_t n, unsigned q,
                                     const engine::ConditionCheckConfig& cfg, std::uint64_t orbit_length,
                                     std::uint64_t seed) {
  std::uint64_t last = cfg.last_index(n);
  return with_orbit(sys, tau, n,
                    [&](const auto& orbit) { return delta_prime_runs(orbit, n, q, last, orbit_length, seed); });
}

}  // namespace mevd::mc
