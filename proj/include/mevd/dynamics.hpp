#pragma once

// Full-branch expanding circle maps x -> b x mod 1 and integer toral
// automorphisms, with exact pullbacks of IntervalSets.

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "mevd/circle_geometry.hpp"
#include "mevd/error.hpp"
#include "mevd/lazy_digits.hpp"
#include "mevd/rational.hpp"

namespace mevd::dynamics {

using geometry::IntervalSet;
using geometry::Piece;

inline constexpr std::size_t kDefaultComponentBudget = 2'000'000;

struct ExpandingBase {
  unsigned b;
};

// Row-major [[a, b], [c, d]].
struct ToralAuto {
  std::array<std::int64_t, 4> m;
};

class MapSpec {
 public:
  static MapSpec expanding(unsigned b) {
    if (b < 2) throw Error("expanding map base must be >= 2");
    if (b > 256) throw Error("expanding map base above 256 is not supported");
    return MapSpec(ExpandingBase{b});
  }
  static MapSpec doubling() { return expanding(2); }
  static MapSpec tripling() { return expanding(3); }

  static MapSpec toral(std::array<std::int64_t, 4> m) {
    std::int64_t det = m[0] * m[3] - m[1] * m[2];
    if (det != 1 && det != -1) throw Error("toral automorphism must have determinant +-1");
    std::int64_t tr = m[0] + m[3];
    bool hyperbolic = det == 1 ? tr * tr > 4 : true;
    if (!hyperbolic) throw Error("toral automorphism is not hyperbolic");
    return MapSpec(ToralAuto{m});
  }
  static MapSpec cat() { return toral({2, 1, 1, 1}); }

  bool is_expanding() const noexcept { return std::holds_alternative<ExpandingBase>(v_); }
  bool is_toral() const noexcept { return std::holds_alternative<ToralAuto>(v_); }

  unsigned base() const {
    if (!is_expanding()) throw TypeMismatch("map is not an expanding circle map");
    return std::get<ExpandingBase>(v_).b;
  }
  const ToralAuto& toral_data() const {
    if (!is_toral()) throw TypeMismatch("map is not a toral automorphism");
    return std::get<ToralAuto>(v_);
  }

  std::string name() const {
    if (is_expanding()) {
      unsigned b = base();
      if (b == 2) return "doubling";
      if (b == 3) return "tripling";
      return "expanding:" + std::to_string(b);
    }
    const auto& m = toral_data().m;
    if (m == std::array<std::int64_t, 4>{2, 1, 1, 1}) return "cat";
    return "toral:" + std::to_string(m[0]) + "," + std::to_string(m[1]) + "," + std::to_string(m[2]) + "," +
           std::to_string(m[3]);
  }

  friend bool operator==(const MapSpec& a, const MapSpec& b) { return a.name() == b.name(); }

 private:
  explicit MapSpec(std::variant<ExpandingBase, ToralAuto> v) : v_(v) {}
  std::variant<ExpandingBase, ToralAuto> v_;
};

// ---------------------------------------------------------------------------
// Preimages

inline IntervalSet preimage(const MapSpec& map, const IntervalSet& s) {
  if (!map.is_expanding()) throw TypeMismatch("preimages are only available for expanding circle maps");
  const unsigned b = map.base();
  std::vector<Piece> out;
  out.reserve(s.pieces().size() * b);
  for (unsigned k = 0; k < b; ++k) {
    for (const auto& p : s.pieces()) out.push_back(Piece{(p.lo + k) / b, (p.hi + k) / b});
  }
  return IntervalSet::from_pieces(std::move(out));
}

// f^{-j}(s). Throws BudgetExceeded once |s| * b^j exceeds `budget`; the
// exception carries the deepest j that fits.
inline IntervalSet iterated_preimage(const MapSpec& map, const IntervalSet& s, unsigned j,
                                     std::size_t budget = kDefaultComponentBudget) {
  if (!map.is_expanding()) throw TypeMismatch("preimages are only available for expanding circle maps");
  BigInt pieces = s.pieces().size();
  unsigned fits = 0;
  for (unsigned i = 1; i <= j; ++i) {
    pieces *= map.base();
    if (pieces > budget) {
      throw BudgetExceeded("iterated_preimage: " + std::to_string(j) + " steps exceed the component budget of " +
                               std::to_string(budget),
                           fits);
    }
    fits = i;
  }
  IntervalSet out = s;
  for (unsigned i = 0; i < j; ++i) out = preimage(map, out);
  return out;
}

// window ∩ f^{-j}(target). Only the branches of f^j meeting `window` are
// built, so the cost follows the size of the answer rather than b^j.
inline IntervalSet pullback_within(const MapSpec& map, const IntervalSet& target, const IntervalSet& window, unsigned j,
                                   std::size_t budget = kDefaultComponentBudget) {
  if (!map.is_expanding()) throw TypeMismatch("preimages are only available for expanding circle maps");
  if (target.empty() || window.empty()) return {};
  const Rational scale(pow_int(map.base(), j));
  const auto& tp = target.pieces();

  BigInt estimate = 0;
  for (const auto& w : window.pieces()) {
    estimate += (mevd::ceil(w.hi * scale) - mevd::floor(w.lo * scale) + 1) * tp.size();
  }
  if (estimate > budget) {
    throw BudgetExceeded("pullback_within: depth " + std::to_string(j) + " exceeds the component budget", j - 1);
  }

  std::vector<Piece> out;
  for (const auto& w : window.pieces()) {
    Rational lo = w.lo * scale, hi = w.hi * scale;
    BigInt k0 = mevd::floor(lo), k1 = mevd::ceil(hi);
    for (BigInt k = k0; k < k1; ++k) {
      Rational shift(k);
      for (const auto& p : tp) {
        Rational a = p.lo + shift, c = p.hi + shift;
        if (a < lo) a = lo;
        if (c > hi) c = hi;
        if (a < c) out.push_back(Piece{a / scale, c / scale});
      }
    }
  }
  return IntervalSet::from_pieces(std::move(out));
}

// μ(window ∩ f^{-j}(target)) without building the set: with
// F(x) = floor(x) μ(T) + μ(T ∩ [0, frac x)), a window piece [lo,hi)
// contributes (F(b^j hi) - F(b^j lo)) / b^j.
inline Rational pullback_measure_within(const MapSpec& map, const IntervalSet& target, const IntervalSet& window,
                                        unsigned j) {
  if (!map.is_expanding()) throw TypeMismatch("preimages are only available for expanding circle maps");
  const Rational scale(pow_int(map.base(), j));
  const Rational mass = target.measure();
  auto F = [&](const Rational& x) {
    BigInt k = mevd::floor(x);
    return Rational(k) * mass + target.measure_below(x - Rational(k));
  };
  Rational total = 0;
  for (const auto& w : window.pieces()) total += F(w.hi * scale) - F(w.lo * scale);
  return total / scale;
}

// Smallest j in [1, j_max] with s ∩ f^{-j}s nonempty.
inline std::optional<unsigned> first_return(const MapSpec& map, const IntervalSet& s, unsigned j_max,
                                            std::size_t budget = kDefaultComponentBudget) {
  if (s.empty()) throw Error("first_return of an empty set");
  for (unsigned j = 1; j <= j_max; ++j) {
    if (!pullback_within(map, s, s, j, budget).empty()) return j;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Torus lattice

// (u, v) stands for (u / 2^64, v / 2^64) on the torus.
struct LatticePoint2D {
  std::uint64_t u = 0;
  std::uint64_t v = 0;
  friend bool operator==(const LatticePoint2D&, const LatticePoint2D&) = default;
};

inline LatticePoint2D step(const ToralAuto& t, LatticePoint2D p) noexcept {
  auto a = static_cast<std::uint64_t>(t.m[0]), b = static_cast<std::uint64_t>(t.m[1]);
  auto c = static_cast<std::uint64_t>(t.m[2]), d = static_cast<std::uint64_t>(t.m[3]);
  return {a * p.u + b * p.v, c * p.u + d * p.v};
}

// Coordinates of the lattice point lifted to [-1/2, 1/2)^2.
inline std::array<long double, 2> centered(LatticePoint2D p) noexcept {
  return {std::ldexp(static_cast<long double>(static_cast<std::int64_t>(p.u)), -64),
          std::ldexp(static_cast<long double>(static_cast<std::int64_t>(p.v)), -64)};
}

struct EigenData {
  long double lambda;                   // expanding eigenvalue, |lambda| > 1
  std::array<long double, 2> unstable;  // unit vectors
  std::array<long double, 2> stable;
};

inline EigenData eigen(const MapSpec& map) {
  const auto& m = map.toral_data().m;
  long double a = m[0], b = m[1], c = m[2], d = m[3];
  long double tr = a + d, det = a * d - b * c;
  long double disc = std::sqrt(tr * tr - 4 * det);
  long double l1 = (tr + disc) / 2, l2 = (tr - disc) / 2;
  long double big = std::fabs(l1) > std::fabs(l2) ? l1 : l2;
  long double small = std::fabs(l1) > std::fabs(l2) ? l2 : l1;
  auto vec = [&](long double l) -> std::array<long double, 2> {
    // (A - l) v = 0 using whichever row is nonzero
    std::array<long double, 2> v = std::fabs(b) > 0 ? std::array<long double, 2>{b, l - a}
                                                     : std::array<long double, 2>{l - d, c};
    long double norm = std::hypot(v[0], v[1]);
    return {v[0] / norm, v[1] / norm};
  };
  return {big, vec(big), vec(small)};
}

// ---------------------------------------------------------------------------
// Points and stationary sampling

using Point = std::variant<LazyDigitPoint, LatticePoint2D>;

inline void step(const MapSpec& map, Point& x) {
  if (map.is_expanding()) {
    auto* p = std::get_if<LazyDigitPoint>(&x);
    if (!p) throw TypeMismatch("expanding map applied to a torus point");
    if (p->base() != map.base()) throw TypeMismatch("digit base differs from map base");
    p->step();
    return;
  }
  auto* q = std::get_if<LatticePoint2D>(&x);
  if (!q) throw TypeMismatch("toral automorphism applied to a circle point");
  *q = step(map.toral_data(), *q);
}

inline LatticePoint2D lattice_point(std::uint64_t seed, std::uint64_t stream) {
  std::mt19937_64 engine(stream_seed(seed, stream));
  LatticePoint2D p;
  p.u = engine();
  p.v = engine();
  return p;
}

// Point i of the stream is drawn from its own sub-stream (seed, i), so any
// subrange can be regenerated independently.
inline std::vector<Point> sample_stationary(const MapSpec& map, std::uint64_t seed, std::size_t count) {
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (map.is_expanding()) out.emplace_back(LazyDigitPoint(map.base(), seed, i));
    else out.emplace_back(lattice_point(seed, i));
  }
  return out;
}

}  // namespace mevd::dynamics
